//! Command-line front end. Every subcommand renders a report as text, JSON or CSV.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::densities::{degree_density_report, orbit_density_scan_with_threads, DegreeDensityReport, OrbitDensityReport};
use crate::dynamics::{
    check_hypotheses, stability_report_with_cap, HypothesisConfig, HypothesisReport, StabilityProblem,
    StabilityReport, UnicriticalMap,
};
use crate::error::Error;
use crate::factorizer::{factor_over_q_with_cap, Factorization};
use crate::qnum::Rational;
use crate::qpoly::{QPoly, DEFAULT_DEGREE_CAP};
use crate::radicals::{capelli_obstructions, CapelliObstruction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "dynfactor", version, about = "Factorization and density experiments for iterates of x^d + c")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, env = "DYNFACTOR_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; only the density scans accept more than one.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    pub degree_cap: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor a polynomial over ℚ.
    Factor {
        /// e.g. "x^4+4", "3x^2 - 1/2" or "[c0,c1,...]"
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Factor f^n(x) - α for n = 1..nmax.
    Stability {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        d: u32,
        #[arg(long, allow_hyphen_values = true)]
        c: Rational,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        alpha: Rational,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        nmax: u32,
        #[command(flatten)]
        thresholds: Thresholds,
    },
    /// Fraction of primes dividing some orbit entry, by residue class mod p.
    OrbitDensity {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        c: Rational,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        b: Rational,
        #[arg(long)]
        xmax: u64,
    },
    /// Density of degrees with φ(d) > C1·d and all prime factors > C2.
    #[command(group(ArgGroup::new("floor").required(true).args(["c2", "min_prime"])))]
    DegreeDensity {
        #[arg(long)]
        c1: Option<f64>,
        #[arg(long)]
        c2: Option<f64>,
        #[arg(long)]
        min_prime: Option<u64>,
        #[arg(long)]
        xmax: u64,
    },
    /// Capelli test for x^d - a.
    Binomial {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        d: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: Rational,
    },
    /// Check the degree and height conditions for (x^d + c, α).
    Hypotheses {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        d: u32,
        #[arg(long, allow_hyphen_values = true)]
        c: Rational,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        alpha: Rational,
        #[arg(long)]
        c1: f64,
        #[arg(long)]
        c2: f64,
    },
}

#[derive(Debug, Args)]
pub struct Thresholds {
    #[arg(long, requires = "c2")]
    pub c1: Option<f64>,
    #[arg(long, requires = "c1")]
    pub c2: Option<f64>,
}

/// Failure of a CLI invocation, mapped to an exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(e) => write!(f, "error: {e}"),
            CliError::Io(e) => write!(f, "error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(m) | Error::Parse(m) => CliError::Usage(m),
            other => CliError::Domain(other),
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = execute(&cli).and_then(|out| match &cli.output {
        Some(path) => std::fs::write(path, out).map_err(CliError::Io),
        None => {
            print!("{out}");
            Ok(())
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command and returns the rendered report.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let parallel = matches!(cli.command, Command::OrbitDensity { .. } | Command::DegreeDensity { .. });
    if cli.threads > 1 && !parallel {
        return Err(CliError::Usage(
            "--threads > 1 is only accepted by orbit-density and degree-density".into(),
        ));
    }
    let threads = cli.threads as usize;
    let fmt = cli.format;
    match &cli.command {
        Command::Factor { poly } => {
            let f: QPoly = poly.parse().map_err(|e: Error| CliError::Usage(e.to_string()))?;
            let fac = factor_over_q_with_cap(&f, cli.seed, cli.degree_cap)?;
            Ok(render_factor(&f, &fac, fmt))
        }
        Command::Stability {
            d,
            c,
            alpha,
            nmax,
            thresholds,
        } => {
            let problem = StabilityProblem::new(UnicriticalMap::new(*d, c.clone())?, alpha.clone())?;
            let hypotheses = match (thresholds.c1, thresholds.c2) {
                (Some(c1), Some(c2)) => Some(check_hypotheses(&problem, &HypothesisConfig::new(c1, c2)?)),
                _ => None,
            };
            let report = stability_report_with_cap(&problem, *nmax, cli.seed, cli.degree_cap)?;
            Ok(render_stability(&StabilityOutput { report, hypotheses }, fmt))
        }
        Command::OrbitDensity { p, c, b, xmax } => {
            let report = orbit_density_scan_with_threads(*p, c, b, *xmax, threads)?;
            Ok(render_orbit_density(&report, fmt))
        }
        Command::DegreeDensity {
            c1,
            c2,
            min_prime,
            xmax,
        } => {
            let floor = c2.unwrap_or_else(|| min_prime.expect("clap group") as f64);
            let report = degree_density_report(*c1, floor, *xmax, threads)?;
            Ok(render_degree_density(&report, fmt))
        }
        Command::Binomial { d, a } => {
            let obstructions = capelli_obstructions(*d, a)?;
            let out = BinomialOutput {
                d: *d,
                a: a.clone(),
                irreducible: obstructions.is_empty(),
                reasons: obstructions.iter().map(CapelliObstruction::reason).collect(),
                obstructions,
            };
            Ok(render_binomial(&out, fmt))
        }
        Command::Hypotheses { d, c, alpha, c1, c2 } => {
            let problem = StabilityProblem::new(UnicriticalMap::new(*d, c.clone())?, alpha.clone())?;
            let report = check_hypotheses(&problem, &HypothesisConfig::new(*c1, *c2)?);
            Ok(render_hypotheses(&problem, &report, fmt))
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(fields: &[String]) -> String {
    let mut line = fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

#[derive(Serialize)]
struct FactorEntry {
    poly: String,
    multiplicity: u32,
    degree: usize,
}

#[derive(Serialize)]
struct FactorOutput {
    input: String,
    unit: Rational,
    factors: Vec<FactorEntry>,
    degrees: Vec<usize>,
    distinct_factor_count: usize,
    with_multiplicity_count: usize,
}

fn render_factor(f: &QPoly, fac: &Factorization, fmt: Format) -> String {
    let out = FactorOutput {
        input: f.to_string(),
        unit: fac.unit.clone(),
        factors: fac
            .factors
            .iter()
            .map(|(g, m)| FactorEntry {
                poly: g.to_string(),
                multiplicity: *m,
                degree: g.deg(),
            })
            .collect(),
        degrees: fac.degrees(),
        distinct_factor_count: fac.distinct_count(),
        with_multiplicity_count: fac.with_multiplicity_count(),
    };
    match fmt {
        Format::Json => to_json(&out),
        Format::Csv => {
            let mut s = csv_line(&["unit".into(), "factor".into(), "multiplicity".into(), "degree".into()]);
            for e in &out.factors {
                s += &csv_line(&[out.unit.to_string(), e.poly.clone(), e.multiplicity.to_string(), e.degree.to_string()]);
            }
            s
        }
        Format::Text => {
            let mut s = format!("{} = {}", out.input, out.unit);
            for e in &out.factors {
                let _ = write!(s, " * ({})", e.poly);
                if e.multiplicity > 1 {
                    let _ = write!(s, "^{}", e.multiplicity);
                }
            }
            let _ = write!(
                s,
                "\nunit: {}\ndistinct factors: {}\ndegrees: [{}]\n",
                out.unit,
                out.distinct_factor_count,
                join(&out.degrees, ", ")
            );
            s
        }
    }
}

#[derive(Serialize)]
struct StabilityOutput {
    #[serde(flatten)]
    report: StabilityReport,
    hypotheses: Option<HypothesisReport>,
}

fn render_stability(out: &StabilityOutput, fmt: Format) -> String {
    let rep = &out.report;
    match fmt {
        Format::Json => to_json(out),
        Format::Csv => {
            let mut s = csv_line(
                &["n", "distinct_factor_count", "with_multiplicity_count", "degrees", "structural_match", "predicted"]
                    .map(String::from),
            );
            for r in &rep.rows {
                s += &csv_line(&[
                    r.n.to_string(),
                    r.distinct_factor_count.to_string(),
                    r.with_multiplicity_count.to_string(),
                    join(&r.degrees, ";"),
                    r.structural_match.to_string(),
                    rep.predicted.to_string(),
                ]);
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "f = {}, alpha = {}\nc - alpha = -({})^{}, m = {}, r = {}, predicted tau(m) = {}\n",
                unicritical(rep.d, &rep.c),
                rep.alpha,
                rep.y,
                rep.m,
                rep.m,
                rep.r,
                rep.predicted
            );
            s += "n  distinct  with_mult  structural  degrees\n";
            for r in &rep.rows {
                let _ = writeln!(
                    s,
                    "{:<2} {:<9} {:<10} {:<11} [{}]",
                    r.n,
                    r.distinct_factor_count,
                    r.with_multiplicity_count,
                    r.structural_match,
                    join(&r.degrees, ", ")
                );
            }
            if rep.truncated {
                s += "truncated: degree cap reached\n";
            }
            if let Some(h) = &out.hypotheses {
                s += &hypothesis_lines(h);
            }
            s
        }
    }
}

fn unicritical(d: u32, c: &Rational) -> QPoly {
    &QPoly::monomial(Rational::one(), d as usize) + &QPoly::constant(c.clone())
}

fn fraction_cells(f: &Option<crate::densities::Fraction>) -> [String; 2] {
    match f {
        Some(f) => [f.0.to_string(), f.0.to_decimal_string(6)],
        None => [String::new(), String::new()],
    }
}

fn render_orbit_density(rep: &OrbitDensityReport, fmt: Format) -> String {
    match fmt {
        Format::Json => to_json(rep),
        Format::Csv => {
            let mut s = csv_line(&["class", "q_count", "member_count", "fraction", "decimal"].map(String::from));
            let total_q: u64 = rep.rows.iter().map(|r| r.primes_scanned).sum();
            let total_m: u64 = rep.rows.iter().map(|r| r.members_of_p).sum();
            for r in &rep.rows {
                let [exact, dec] = fraction_cells(&r.fraction);
                s += &csv_line(&[r.class.into(), r.primes_scanned.to_string(), r.members_of_p.to_string(), exact, dec]);
            }
            let [exact, dec] = fraction_cells(&rep.overall_fraction);
            s += &csv_line(&["all".into(), total_q.to_string(), total_m.to_string(), exact, dec]);
            s
        }
        Format::Text => {
            let mut s = format!(
                "orbit of {} under {}, primes q <= {}\n",
                rep.b,
                unicritical(rep.p as u32, &rep.c),
                rep.x_max
            );
            s += "class          scanned  members  fraction\n";
            for r in &rep.rows {
                let [exact, dec] = fraction_cells(&r.fraction);
                let _ = writeln!(
                    s,
                    "{:<14} {:<8} {:<8} {exact} ({dec})",
                    r.class, r.primes_scanned, r.members_of_p
                );
            }
            let [exact, dec] = fraction_cells(&rep.overall_fraction);
            let _ = writeln!(s, "overall: {exact} ({dec})");
            let _ = writeln!(
                s,
                "predicted density (p-2)/(p-1): {} ({})",
                rep.predicted_density.0,
                rep.predicted_density.0.to_decimal_string(6)
            );
            let _ = writeln!(s, "bad primes: [{}]", join(&rep.bad_primes, ", "));
            s
        }
    }
}

fn render_degree_density(rep: &DegreeDensityReport, fmt: Format) -> String {
    let asym = rep.mertens_asymptotic.map(|a| format!("{a:.6}")).unwrap_or_default();
    let c1 = rep.c1.map(|c| c.to_string()).unwrap_or_default();
    match fmt {
        Format::Json => to_json(rep),
        Format::Csv => {
            let mut s = csv_line(
                &["X", "M", "C1", "count", "density", "density_decimal", "mertens_c_M", "mertens_c_M_decimal", "mertens_asymptotic"]
                    .map(String::from),
            );
            s += &csv_line(&[
                rep.x_max.to_string(),
                rep.m.to_string(),
                c1,
                rep.count.to_string(),
                rep.density.0.to_string(),
                rep.density.0.to_decimal_string(6),
                rep.mertens_c_m.0.to_string(),
                rep.mertens_c_m.0.to_decimal_string(6),
                asym,
            ]);
            s
        }
        Format::Text => {
            let mut s = format!("d <= {}, all prime factors > {}", rep.x_max, rep.m);
            if let Some(c1) = rep.c1 {
                let _ = write!(s, ", phi(d) > {c1}*d");
            }
            let _ = write!(
                s,
                "\ncount: {}\ndensity: {} ({})\nc_M: {} ({})\n",
                rep.count,
                rep.density.0,
                rep.density.0.to_decimal_string(6),
                rep.mertens_c_m.0,
                rep.mertens_c_m.0.to_decimal_string(6)
            );
            if !asym.is_empty() {
                let _ = writeln!(s, "e^-gamma / ln M: {asym}");
            }
            s
        }
    }
}

#[derive(Serialize)]
struct BinomialOutput {
    d: u64,
    a: Rational,
    irreducible: bool,
    reasons: Vec<String>,
    obstructions: Vec<CapelliObstruction>,
}

fn render_binomial(out: &BinomialOutput, fmt: Format) -> String {
    match fmt {
        Format::Json => to_json(out),
        Format::Csv => {
            let mut s = csv_line(&["d", "a", "irreducible", "reasons"].map(String::from));
            s += &csv_line(&[out.d.to_string(), out.a.to_string(), out.irreducible.to_string(), out.reasons.join("; ")]);
            s
        }
        Format::Text => {
            let verdict = if out.irreducible { "irreducible" } else { "reducible" };
            let binomial = &QPoly::monomial(Rational::one(), out.d as usize) - &QPoly::constant(out.a.clone());
            let mut s = format!("{binomial} is {verdict} over Q\n");
            for r in &out.reasons {
                let _ = writeln!(s, "  {r}");
            }
            s
        }
    }
}

fn hypothesis_rows(h: &HypothesisReport) -> Vec<(&'static str, String)> {
    vec![
        ("cond_phi_ratio", h.cond_phi_ratio.to_string()),
        ("cond_prime_floor", h.cond_prime_floor.to_string()),
        ("cond_not_fixed", h.cond_not_fixed.to_string()),
        ("cond_heights_positive", h.cond_heights_positive.to_string()),
        ("in_exclusion_set", h.in_exclusion_set.to_string()),
        ("predicted_factor_count", h.predicted_factor_count.to_string()),
    ]
}

fn hypothesis_lines(h: &HypothesisReport) -> String {
    let mut s = String::new();
    for (k, v) in hypothesis_rows(h) {
        let _ = writeln!(s, "{k}: {v}");
    }
    s
}

#[derive(Serialize)]
struct HypothesesOutput<'a> {
    d: u32,
    c: &'a Rational,
    alpha: &'a Rational,
    #[serde(flatten)]
    report: &'a HypothesisReport,
}

fn render_hypotheses(problem: &StabilityProblem, h: &HypothesisReport, fmt: Format) -> String {
    match fmt {
        Format::Json => to_json(&HypothesesOutput {
            d: problem.map.d,
            c: &problem.map.c,
            alpha: &problem.alpha,
            report: h,
        }),
        Format::Csv => {
            let mut s = csv_line(&["condition".into(), "value".into()]);
            for (k, v) in hypothesis_rows(h) {
                s += &csv_line(&[k.into(), v]);
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "f = {}, alpha = {}\n",
                problem.map.as_poly(),
                problem.alpha
            );
            s += &hypothesis_lines(h);
            let _ = writeln!(s, "all conditions hold: {}", h.all_conditions_hold());
            s
        }
    }
}

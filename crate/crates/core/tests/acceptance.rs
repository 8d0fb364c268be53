//! Acceptance suite: one PASS/FAIL line per criterion; exits nonzero on any failure.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dynfactor::densities::{
    good_degree_count, orbit_density_scan, primes_up_to, CLASS_NOT_ONE, CLASS_ONE,
};
use dynfactor::dynamics::{
    critical_orbit, critical_orbit_prefix, height_arg, stability_report, structural_factors,
    DEFAULT_ORBIT_BITS,
};
use dynfactor::error::Error;
use dynfactor::qnum::weil_height;
use dynfactor::qpoly::{compose, iterate_shifted};
use dynfactor::radicals::{arithmetic_functions, binomial_irreducible};
use dynfactor::{factor_over_q, QPoly, Rational, StabilityProblem, UnicriticalMap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240601;

struct Outcome {
    pass: bool,
    detail: String,
    /// Canonical JSON of everything the criterion computed.
    json: String,
}

fn problem(d: u32, c: &str, alpha: &str) -> StabilityProblem {
    let map = UnicriticalMap::new(d, c.parse().unwrap()).unwrap();
    StabilityProblem::new(map, alpha.parse().unwrap()).unwrap()
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).unwrap()
}

fn small_degree_anomaly(seed: u64) -> Outcome {
    let rep = stability_report(&problem(2, "-16/9", "0"), 4, seed).unwrap();
    let counts = rep.distinct_counts();
    Outcome {
        pass: counts.len() == 4 && counts[2] == 4 && counts[3] == 4,
        detail: format!("x^2 - 16/9 distinct counts {counts:?} (n=2 recorded, not asserted)"),
        json: json(&rep),
    }
}

fn tau_pattern(seed: u64) -> Outcome {
    let rep = stability_report(&problem(5, "-32", "0"), 2, seed).unwrap();
    let counts = rep.distinct_counts();
    let matched = rep.rows.iter().all(|r| r.structural_match);
    Outcome {
        pass: counts == [2, 2] && matched,
        detail: format!("x^5 - 32 counts {counts:?}, structural_match {matched}"),
        json: json(&rep),
    }
}

fn structural_identity(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut cases = Vec::new();
    for _ in 0..100 {
        let d = rng.gen_range(2..=10u32);
        let divs = arithmetic_functions(d as u64).divisors;
        let m = divs[rng.gen_range(0..divs.len())];
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let y = Rational::new(sign * rng.gen_range(1..=6i64), rng.gen_range(1..=5i64));
        let alpha = Rational::new(rng.gen_range(-6..=6i64), rng.gen_range(1..=4i64));
        let c = &alpha - &y.pow(m as u32);
        let p = StabilityProblem::new(UnicriticalMap::new(d, c.clone()).unwrap(), alpha.clone()).unwrap();
        let g = structural_factors(&p).unwrap();
        let f = p.map.as_poly();
        for n in 1..=2u32 {
            let inner = if n == 1 { QPoly::x() } else { f.clone() };
            let product = g.iter().fold(QPoly::one(), |acc, (_, h)| &acc * &compose(h, &inner));
            if product != iterate_shifted(&p.map, n, &alpha).unwrap() {
                failures += 1;
            }
        }
        cases.push((d, c.to_string(), alpha.to_string(), p.radical.m));
    }
    Outcome {
        pass: failures == 0,
        detail: format!("100 problems, n in {{1,2}}: {failures} failures"),
        json: json(&cases),
    }
}

// ---- brute-force oracle for integer polynomials of degree <= 4 ----

type IPoly = Vec<i128>;

fn trim(mut p: IPoly) -> IPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn divisors(n: i128) -> Vec<i128> {
    let n = n.abs();
    (1..=n).filter(|d| n % d == 0).collect()
}

fn eval(p: &IPoly, x: i128) -> i128 {
    p.iter().rev().fold(0, |acc, c| acc * x + c)
}

/// Exact quotient over ℤ, if `d` divides `p`.
fn div_exact(p: &IPoly, d: &IPoly) -> Option<IPoly> {
    let (n, k) = (p.len() - 1, d.len() - 1);
    if n < k {
        return None;
    }
    let mut r = p.clone();
    let mut q = vec![0; n - k + 1];
    for i in (0..=n - k).rev() {
        let top = r[i + k];
        if top % d[k] != 0 {
            return None;
        }
        q[i] = top / d[k];
        for j in 0..=k {
            r[i + j] -= q[i] * d[j];
        }
    }
    r.iter().all(|&c| c == 0).then_some(q)
}

/// Primitive irreducible factors with positive leading coefficient, by divisor search.
fn oracle_factors(f: &IPoly) -> (i128, Vec<IPoly>) {
    let content = f.iter().fold(0, |g, &c| gcd(g, c));
    let sign = f.last().unwrap().signum();
    let unit = sign * content;
    let mut rest: IPoly = f.iter().map(|c| c / unit).collect();
    let mut out = Vec::new();
    'roots: while rest.len() > 1 {
        if rest[0] == 0 {
            out.push(vec![0, 1]);
            rest.remove(0);
            continue;
        }
        for q in divisors(*rest.last().unwrap()) {
            for p in divisors(rest[0]) {
                for p in [p, -p] {
                    if gcd(p, q) != 1 {
                        continue;
                    }
                    let lin = vec![-p, q];
                    if let Some(quo) = div_exact(&rest, &lin) {
                        out.push(lin);
                        rest = quo;
                        continue 'roots;
                    }
                }
            }
        }
        break;
    }
    if rest.len() == 5 {
        // no rational roots left: look for a quadratic a x^2 + b x + c with
        // a | lc, c | f(0) and (a + b + c) | f(1)
        let f1 = eval(&rest, 1);
        let mut found = None;
        'search: for a in divisors(rest[4]) {
            for c0 in divisors(rest[0]) {
                for c in [c0, -c0] {
                    for t0 in divisors(f1) {
                        for t in [t0, -t0] {
                            let quad = vec![c, t - a - c, a];
                            if let Some(other) = div_exact(&rest, &quad) {
                                found = Some((quad, other));
                                break 'search;
                            }
                        }
                    }
                }
            }
        }
        if let Some((g, h)) = found {
            let norm = |p: IPoly| if *p.last().unwrap() < 0 { p.iter().map(|c| -c).collect() } else { p };
            out.push(norm(g));
            out.push(norm(h));
            rest = vec![1];
        }
    }
    if rest.len() > 1 {
        out.push(rest);
    }
    (unit, out)
}

fn canonical(mut fs: Vec<IPoly>) -> BTreeMap<(usize, IPoly), u32> {
    let mut m = BTreeMap::new();
    for f in fs.drain(..) {
        *m.entry((f.len(), f)).or_insert(0) += 1;
    }
    m
}

fn random_poly(rng: &mut ChaCha8Rng) -> IPoly {
    loop {
        let p = if rng.gen_bool(0.5) {
            let deg = rng.gen_range(0..=4usize);
            (0..=deg).map(|_| rng.gen_range(-20..=20i128)).collect()
        } else {
            // a product of small factors, kept only if its coefficients stay in range
            let mut p: IPoly = vec![rng.gen_range(1..=3i128) * if rng.gen_bool(0.5) { 1 } else { -1 }];
            let mut deg = 0;
            while deg < 4 && rng.gen_bool(0.8) {
                let k = rng.gen_range(1..=(4 - deg).min(2));
                let mut g: IPoly = (0..=k).map(|_| rng.gen_range(-4..=4i128)).collect();
                if g[k] == 0 {
                    g[k] = 1;
                }
                let mut prod = vec![0; p.len() + k];
                for (i, a) in p.iter().enumerate() {
                    for (j, b) in g.iter().enumerate() {
                        prod[i + j] += a * b;
                    }
                }
                p = prod;
                deg += k;
            }
            p
        };
        let p = trim(p);
        if !p.is_empty() && p.iter().all(|c| c.abs() <= 20) {
            return p;
        }
    }
}

fn factorizer_oracle(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    let mut record = Vec::new();
    let mut reducible = 0;
    for _ in 0..5000 {
        let f = random_poly(&mut rng);
        let q = QPoly::new(f.iter().map(|&c| Rational::from(c as i64)).collect());
        let fac = factor_over_q(&q, seed).unwrap();
        let ours: Vec<IPoly> = fac
            .factors
            .iter()
            .flat_map(|(g, m)| {
                let v: IPoly = g.coeffs().iter().map(|c| i128::try_from(c).unwrap()).collect();
                std::iter::repeat_n(v, *m as usize)
            })
            .collect();
        let (unit, theirs) = oracle_factors(&f);
        if theirs.len() > 1 {
            reducible += 1;
        }
        if canonical(ours) != canonical(theirs) || fac.unit != Rational::from(unit as i64) {
            mismatches.push(format!("{q}"));
        }
        record.push(format!("{}|{:?}", fac.unit, fac.factors));
    }
    Outcome {
        pass: mismatches.is_empty(),
        detail: format!(
            "5000 polynomials ({reducible} reducible): {} mismatches {:?}",
            mismatches.len(),
            &mismatches[..mismatches.len().min(5)]
        ),
        json: json(&record),
    }
}

fn capelli(seed: u64) -> Outcome {
    let mut disagreements = Vec::new();
    let mut record = Vec::new();
    for d in 1..=8u64 {
        for a in (-50i64..=50).filter(|&a| a != 0) {
            let a = Rational::from(a);
            let f = &QPoly::monomial(Rational::one(), d as usize) - &QPoly::constant(a.clone());
            let fac = factor_over_q(&f, seed).unwrap();
            let capelli = binomial_irreducible(d, &a).unwrap();
            if capelli != (fac.with_multiplicity_count() == 1) {
                disagreements.push(format!("x^{d} - {a}"));
            }
            record.push(capelli);
        }
    }
    Outcome {
        pass: disagreements.is_empty(),
        detail: format!("d <= 8, |a| <= 50: {} disagreements {disagreements:?}", disagreements.len()),
        json: json(&record),
    }
}

fn permutation_argument(_seed: u64) -> Outcome {
    let rep = orbit_density_scan(3, &Rational::one(), &Rational::zero(), 10_000).unwrap();
    let row = rep.class(CLASS_NOT_ONE).unwrap();
    let exact_one = row.fraction.as_ref().is_some_and(|f| f.0.is_one());
    Outcome {
        pass: exact_one && row.members_of_p == row.primes_scanned,
        detail: format!(
            "x^3 + 1, q <= 10^4, q != 1 mod 3: {}/{} members",
            row.members_of_p, row.primes_scanned
        ),
        json: json(&rep),
    }
}

fn density_prediction(_seed: u64) -> Outcome {
    let c = Rational::from(2);
    let calib = orbit_density_scan(5, &c, &Rational::zero(), 10_000).unwrap();
    let calib_one = calib.class(CLASS_ONE).unwrap().fraction.clone().unwrap();
    let rep = orbit_density_scan(5, &c, &Rational::zero(), 100_000).unwrap();
    let overall = rep.overall_fraction.clone().unwrap();
    let one = rep.class(CLASS_ONE).unwrap().fraction.clone().unwrap();
    // calibrated at X = 10^4: the q = 1 mod 5 class has 3 members among 306 primes
    let calibrated = calib_one.0 == Rational::new(3, 306) && calib_one.to_f64() < 0.5;
    Outcome {
        pass: calibrated && one.to_f64() < 0.5 && (overall.to_f64() - 0.75).abs() <= 0.05,
        detail: format!(
            "x^5 + 2: calibration q=1 class {} at 10^4; at 10^5 q=1 class {}, overall {} ({})",
            calib_one.0,
            one.0,
            overall.0,
            overall.0.to_decimal_string(6)
        ),
        json: json(&(calib, rep)),
    }
}

fn inclusion_exclusion(x: u64, m: u64) -> i64 {
    let ps = primes_up_to(m);
    (0u32..1 << ps.len())
        .map(|mask| {
            let prod: u64 = ps
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| p)
                .product();
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            sign * (x / prod) as i64
        })
        .sum()
}

fn degree_density(_seed: u64) -> Outcome {
    let count = good_degree_count(1_000_000, 5);
    let dens = count as f64 / 1e6;
    let mut ie_ok = true;
    for m in [1u64, 2, 3, 5, 7, 11, 13, 17] {
        ie_ok &= good_degree_count(10_000, m) as i64 == inclusion_exclusion(10_000, m);
    }
    Outcome {
        pass: (dens - 4.0 / 15.0).abs() <= 0.005 && ie_ok,
        detail: format!("count(10^6, 5) = {count}, density {dens:.6} vs 4/15; inclusion-exclusion at 10^4: {ie_ok}"),
        json: json(&count),
    }
}

fn height_lemma(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut blowups = 0;
    let mut checked = 0;
    let mut samples = 0;
    while samples < 200 {
        let d = rng.gen_range(4..=9u32);
        let scale = 10i64.pow(rng.gen_range(1..=6));
        let c = Rational::new(rng.gen_range(-scale..=scale), rng.gen_range(1..=scale));
        if weil_height(&c).is_zero() {
            continue;
        }
        samples += 1;
        let map = UnicriticalMap::new(d, c.clone()).unwrap();
        let orbit = match critical_orbit(&map, 6) {
            Ok(o) => o,
            Err(Error::OrbitBlowup { .. }) => {
                blowups += 1;
                critical_orbit_prefix(&map, 6, DEFAULT_ORBIT_BITS).0
            }
            Err(e) => panic!("{e}"),
        };
        let hc = height_arg(&c);
        for x in &orbit {
            checked += 1;
            if height_arg(x) < hc {
                violations += 1;
            }
        }
    }
    Outcome {
        pass: violations == 0 && blowups > 0,
        detail: format!("200 maps, {checked} orbit points: {violations} violations, {blowups} blowup guards hit"),
        json: String::new(),
    }
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, fn(u64) -> Outcome, Duration);
    let criteria: [Criterion; 9] = [
        (1, "small-degree anomaly", small_degree_anomaly, Duration::from_secs(10)),
        (2, "tau(p) = 2 pattern", tau_pattern, Duration::from_secs(60)),
        (3, "structural identity", structural_identity, Duration::from_secs(30)),
        (4, "factorizer oracle", factorizer_oracle, Duration::from_secs(120)),
        (5, "Capelli cross-validation", capelli, Duration::from_secs(120)),
        (6, "permutation argument", permutation_argument, Duration::from_secs(60)),
        (7, "density prediction", density_prediction, Duration::from_secs(300)),
        (8, "degree density vs Mertens", degree_density, Duration::from_secs(10)),
        (9, "orbit height lemma", height_lemma, Duration::MAX),
    ];

    let mut all_pass = true;
    let mut first_run = Vec::new();
    for (id, name, run, limit) in criteria {
        let start = Instant::now();
        let out = run(SEED);
        let elapsed = start.elapsed();
        let pass = out.pass && elapsed < limit;
        all_pass &= pass;
        println!(
            "{} [{id}] {name}: {} ({:.2}s)",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
        if id <= 8 {
            first_run.push(out.json);
        }
    }

    let start = Instant::now();
    let differing: Vec<u32> = criteria[..8]
        .iter()
        .zip(&first_run)
        .filter(|((_, _, run, _), before)| run(SEED).json != **before)
        .map(|((id, ..), _)| *id)
        .collect();
    let pass = differing.is_empty();
    all_pass &= pass;
    println!(
        "{} [10] determinism: criteria 1-8 rerun, JSON differs for {differing:?} ({:.2}s)",
        if pass { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );

    let start = Instant::now();
    let stretch = stability_report(&problem(5, "-32", "0"), 3, SEED).unwrap();
    println!(
        "INFO [2-stretch] x^5 - 32 with N = 3: counts {:?} ({:.2}s, limit 300s, non-blocking)",
        stretch.distinct_counts(),
        start.elapsed().as_secs_f64()
    );

    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

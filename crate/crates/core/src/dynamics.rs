//! Unicritical maps `x^d + c`: critical orbits, periodicity, the structural
//! factorization of `f^n - α` and stability reports.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorizer::factor_over_q_with_cap;
use crate::qnum::{weil_height, Rational};
use crate::qpoly::{compose, cyclotomic, QPoly, DEFAULT_DEGREE_CAP};
use crate::radicals::{arithmetic_functions, max_radical_exponent, RadicalDecomposition};

/// Default bit-length cap on critical-orbit entries.
pub const DEFAULT_ORBIT_BITS: u64 = 1_000_000;

/// `f(x) = x^d + c` over ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct UnicriticalMap {
    pub d: u32,
    pub c: Rational,
}

impl UnicriticalMap {
    pub fn new(d: u32, c: Rational) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidArgument(format!("degree {d} < 2")));
        }
        Ok(UnicriticalMap { d, c })
    }

    pub fn as_poly(&self) -> QPoly {
        &QPoly::monomial(Rational::one(), self.d as usize) + &QPoly::constant(self.c.clone())
    }

    /// `x^d + c`.
    ///
    /// With `x = a/b` and `c = e/f` in lowest terms, a prime dividing both
    /// `L = lcm(b^d, f)` and the numerator over `L` must divide `f`, so the final
    /// reduction only needs a gcd against the small `f`.
    pub fn apply(&self, x: &Rational) -> Rational {
        let (a, b) = (x.numer(), x.denom());
        let (e, f) = (self.c.numer(), self.c.denom());
        let bd = num_traits::pow(b.clone(), self.d as usize);
        let ad = num_traits::pow(a.clone(), self.d as usize);
        let g = (&bd % f).gcd(f);
        let l_over_bd = f / &g;
        let l_over_f = &bd / &g;
        let num = ad * &l_over_bd + e * &l_over_f;
        let den = bd * l_over_bd;
        let h = (&num % f).gcd(f);
        if h.is_one() {
            Rational::from_reduced(num, den)
        } else {
            Rational::from_reduced(num / &h, den / h)
        }
    }
}

/// The pair `(f, α)` together with the radical decomposition of `c - α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityProblem {
    pub map: UnicriticalMap,
    pub alpha: Rational,
    pub radical: RadicalDecomposition,
}

impl StabilityProblem {
    pub fn new(map: UnicriticalMap, alpha: Rational) -> Result<Self> {
        let v = &map.c - &alpha;
        let radical = max_radical_exponent(map.d as u64, &v)?;
        Ok(StabilityProblem {
            map,
            alpha,
            radical,
        })
    }
}

/// `[f(0), f²(0), …, f^n(0)]`, refusing entries longer than [`DEFAULT_ORBIT_BITS`].
pub fn critical_orbit(map: &UnicriticalMap, n: usize) -> Result<Vec<Rational>> {
    critical_orbit_with_cap(map, n, DEFAULT_ORBIT_BITS)
}

pub fn critical_orbit_with_cap(map: &UnicriticalMap, n: usize, cap_bits: u64) -> Result<Vec<Rational>> {
    let (orbit, complete) = critical_orbit_prefix(map, n, cap_bits);
    if complete {
        Ok(orbit)
    } else {
        Err(Error::OrbitBlowup {
            computed: orbit.len(),
        })
    }
}

/// Longest prefix of the critical orbit (up to `n` terms) within the bit cap,
/// and whether all `n` terms were computed.
pub fn critical_orbit_prefix(map: &UnicriticalMap, n: usize, cap_bits: u64) -> (Vec<Rational>, bool) {
    let mut out = Vec::with_capacity(n);
    let mut x = Rational::zero();
    for _ in 0..n {
        // the next entry has roughly d times as many bits as x, plus those of c
        let estimate = x.height_bits() * map.d as u64;
        if estimate > cap_bits || map.c.height_bits() > cap_bits {
            return (out, false);
        }
        x = map.apply(&x);
        out.push(x.clone());
    }
    (out, true)
}

pub fn is_fixed_point(map: &UnicriticalMap, alpha: &Rational) -> bool {
    &map.apply(alpha) == alpha
}

/// Whether `β` lies on a cycle of `f`.
///
/// An orbit point with `|x| > max(1, |c|) + 1` escapes to infinity, and one whose
/// denominator satisfies `den(x)^d ∤ den(c)` escapes `p`-adically; neither can
/// return to `β`. All other orbit points lie in a finite set, so the loop ends.
pub fn is_periodic_basepoint(map: &UnicriticalMap, beta: &Rational) -> bool {
    let bound = map.c.abs().max(Rational::one()) + Rational::one();
    let den_c = map.c.denom();
    let mut seen = HashSet::new();
    let mut x = beta.clone();
    loop {
        if x.abs() > bound {
            return false;
        }
        if !(den_c % x.denom().pow(map.d)).is_zero() {
            return false;
        }
        if !seen.insert(x.clone()) {
            return false;
        }
        x = map.apply(&x);
        if &x == beta {
            return true;
        }
    }
}

/// `g_a(x) = y^φ(a) Φ_a(x^r / y)` for each divisor `a` of `m`, in increasing `a`.
///
/// Their product is `f(x) - α`.
pub fn structural_factors(problem: &StabilityProblem) -> Result<Vec<(u64, QPoly)>> {
    let rad = &problem.radical;
    if rad.y.is_zero() {
        return Err(Error::Degenerate);
    }
    let divisors = arithmetic_functions(rad.m).divisors;
    Ok(divisors
        .into_iter()
        .map(|a| (a, structural_factor_base(a, &rad.y).inflate(rad.r as usize)))
        .collect())
}

/// `y^φ(a) Φ_a(x / y)`, so that `g_a = h(x^r)`.
fn structural_factor_base(a: u64, y: &Rational) -> QPoly {
    let phi = cyclotomic(a);
    let n = phi.deg();
    QPoly::new(
        phi.coeffs()
            .iter()
            .enumerate()
            .map(|(j, cj)| cj * y.pow((n - j) as u32))
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityRow {
    pub n: u32,
    pub distinct_factor_count: usize,
    pub with_multiplicity_count: usize,
    pub degrees: Vec<usize>,
    pub structural_match: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub d: u32,
    pub c: Rational,
    pub alpha: Rational,
    pub m: u64,
    pub y: Rational,
    pub r: u64,
    pub rows: Vec<StabilityRow>,
    /// `τ(m)`
    pub predicted: u64,
    /// Set when `d^n` exceeded the degree cap before `n = N`.
    pub truncated: bool,
}

impl StabilityReport {
    pub fn distinct_counts(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.distinct_factor_count).collect()
    }
}

pub fn stability_report(problem: &StabilityProblem, n_max: u32, seed: u64) -> Result<StabilityReport> {
    stability_report_with_cap(problem, n_max, seed, DEFAULT_DEGREE_CAP)
}

/// Factors `f^n(x) - α` for `n = 1..=n_max` and compares against the structural factors.
pub fn stability_report_with_cap(
    problem: &StabilityProblem,
    n_max: u32,
    seed: u64,
    degree_cap: usize,
) -> Result<StabilityReport> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("N must be >= 1".into()));
    }
    let map = &problem.map;
    let rad = &problem.radical;
    let bases: Vec<QPoly> = arithmetic_functions(rad.m)
        .divisors
        .into_iter()
        .map(|a| structural_factor_base(a, &rad.y))
        .collect();
    let shift = QPoly::constant(&map.c - &problem.alpha);

    let mut rows = Vec::new();
    let mut truncated = false;
    // f^(n-1)(x)
    let mut prev = QPoly::x();
    for n in 1..=n_max {
        let within_cap = (map.d as usize)
            .checked_pow(n)
            .is_some_and(|deg| deg <= degree_cap);
        if !within_cap {
            truncated = true;
            break;
        }
        let prev_r = prev.pow(rad.r as u32);
        let target = &prev_r.pow(rad.m as u32) + &shift;
        let fac = factor_over_q_with_cap(&target, seed, degree_cap)?;

        let structural_match = fac.distinct_count() == bases.len()
            && bases.iter().all(|h| {
                let (_, g) = compose(h, &prev_r).to_primitive_zpoly();
                fac.factors.iter().any(|(f, e)| *e == 1 && *f == g)
            });
        rows.push(StabilityRow {
            n,
            distinct_factor_count: fac.distinct_count(),
            with_multiplicity_count: fac.with_multiplicity_count(),
            degrees: fac.degrees(),
            structural_match,
        });
        prev = &prev.pow(map.d) + &QPoly::constant(map.c.clone());
    }

    Ok(StabilityReport {
        d: map.d,
        c: map.c.clone(),
        alpha: problem.alpha.clone(),
        m: rad.m,
        y: rad.y.clone(),
        r: rad.r,
        rows,
        predicted: bases.len() as u64,
        truncated,
    })
}

/// Thresholds for the degree conditions `φ(d) > C1·d` and `spf(d) > C2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HypothesisConfig {
    pub c1: f64,
    pub c2: f64,
}

impl HypothesisConfig {
    pub fn new(c1: f64, c2: f64) -> Result<Self> {
        if !(c1 > 0.0 && c1 < 1.0) {
            return Err(Error::InvalidArgument(format!("C1 = {c1} not in (0, 1)")));
        }
        if !(c2 > 0.0 && c2.is_finite()) {
            return Err(Error::InvalidArgument(format!("C2 = {c2} not positive")));
        }
        Ok(HypothesisConfig { c1, c2 })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub cond_phi_ratio: bool,
    pub cond_prime_floor: bool,
    pub cond_not_fixed: bool,
    pub cond_heights_positive: bool,
    /// `c = α - α^k` for some `k >= 2`.
    pub in_exclusion_set: bool,
    /// `τ(m)`
    pub predicted_factor_count: u64,
}

impl HypothesisReport {
    pub fn all_conditions_hold(&self) -> bool {
        self.cond_phi_ratio && self.cond_prime_floor && self.cond_not_fixed && self.cond_heights_positive
    }
}

pub fn check_hypotheses(problem: &StabilityProblem, config: &HypothesisConfig) -> HypothesisReport {
    let map = &problem.map;
    let d = map.d as u64;
    let arith = arithmetic_functions(d);
    let exact = |x: f64| Rational::from_f64(x).expect("finite threshold");
    let cond_phi_ratio = Rational::from(arith.phi as i64) > exact(config.c1) * Rational::from(d as i64);
    let cond_prime_floor = arith
        .smallest_prime_factor
        .is_some_and(|p| Rational::from(p as i64) > exact(config.c2));
    let v = &map.c - &problem.alpha;
    let cond_heights_positive = !weil_height(&map.c).is_zero() && !weil_height(&v).is_zero();
    HypothesisReport {
        cond_phi_ratio,
        cond_prime_floor,
        cond_not_fixed: !is_fixed_point(map, &problem.alpha),
        cond_heights_positive,
        in_exclusion_set: exclusion_exponent(&problem.alpha, &map.c).is_some(),
        predicted_factor_count: arithmetic_functions(problem.radical.m).tau,
    }
}

/// Least `k >= 2` with `α^k = α - c`, if any.
///
/// `H(α^k) = H(α)^k`, so when `H(α) > 1` only `k` with `H(α)^k <= H(α - c)` need
/// checking; when `H(α) = 1` the powers of `α` cycle with period at most 2.
pub fn exclusion_exponent(alpha: &Rational, c: &Rational) -> Option<u32> {
    let target = alpha - c;
    let h_alpha = weil_height(alpha).exact_log_arg;
    let h_target = weil_height(&target).exact_log_arg;
    let last = if h_alpha.is_one() {
        3
    } else {
        let mut k = 1;
        let mut pow = h_alpha.clone();
        while pow <= h_target {
            pow *= &h_alpha;
            k += 1;
        }
        k
    };
    (2..=last.max(2)).find(|&k| alpha.pow(k) == target)
}

/// Integer height argument `H(x) = max(|a|, |b|)`.
pub fn height_arg(x: &Rational) -> BigUint {
    weil_height(x).exact_log_arg
}

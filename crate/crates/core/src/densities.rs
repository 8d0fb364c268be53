//! Density experiments: prime divisors of orbits modulo `q`, and the sieve
//! counting degrees whose prime factors all exceed a floor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::dynamics::{is_periodic_basepoint, UnicriticalMap};
use crate::error::{Error, Result};
use crate::fp::{inv_mod, pow_mod};
use crate::qnum::Rational;

/// Euler–Mascheroni constant to 50 decimal places.
pub const EULER_GAMMA: &str = "0.57721566490153286060651209008240243104215933593992";

/// Largest modulus for which an orbit is tracked with a visited-flag array.
pub const MAX_ORBIT_MODULUS: u64 = 10_000_000;

/// Moduli up to this size are checked for bijectivity by brute force.
const DIRECT_PERMUTATION_LIMIT: u64 = 10_000;

/// A rational reported both exactly and as a 6-place decimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction(pub Rational);

impl Fraction {
    pub fn new(num: u64, den: u64) -> Self {
        Fraction(Rational::new(num, den))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Fraction", 2)?;
        st.serialize_field("exact", &self.0.to_string())?;
        st.serialize_field("decimal", &self.0.to_decimal_string(6))?;
        st.end()
    }
}

/// `x mod q` for a rational whose denominator is prime to `q`.
fn reduce_rational(x: &Rational, q: u64) -> Result<u64> {
    let qb = BigInt::from(q);
    let den = x.denom().mod_floor(&qb).to_u64().expect("residue fits");
    if den == 0 {
        return Err(Error::BadPrime(q));
    }
    let num = x.numer().mod_floor(&qb).to_u64().expect("residue fits");
    Ok(num * inv_mod(den, q) % q)
}

fn check_modulus(q: u64) -> Result<()> {
    if !crate::factorizer::is_prime_u64(q) {
        return Err(Error::InvalidArgument(format!("{q} is not prime")));
    }
    if q > MAX_ORBIT_MODULUS {
        return Err(Error::InvalidArgument(format!(
            "modulus {q} exceeds {MAX_ORBIT_MODULUS}"
        )));
    }
    Ok(())
}

/// First-hit search in `F_q`; `stamps` holds a visit marker per residue.
fn first_hit(d: u32, c: u64, b: u64, q: u64, stamps: &mut Vec<u32>, stamp: u32) -> Option<u64> {
    if stamps.len() < q as usize {
        stamps.resize(q as usize, 0);
    }
    let mut x = b;
    stamps[x as usize] = stamp;
    for n in 1..=q {
        x = (pow_mod(x, d as u64, q) + c) % q;
        if x == 0 {
            return Some(n);
        }
        if stamps[x as usize] == stamp {
            return None;
        }
        stamps[x as usize] = stamp;
    }
    unreachable!("a repeat occurs within q steps")
}

/// Least `n >= 1` with `f^n(b) ≡ 0 (mod q)`, or `None` if the orbit cycles first.
pub fn orbit_hit_mod_q(map: &UnicriticalMap, b: &Rational, q: u64) -> Result<Option<u64>> {
    check_modulus(q)?;
    let c = reduce_rational(&map.c, q)?;
    let b = reduce_rational(b, q)?;
    Ok(first_hit(map.d, c, b, q, &mut Vec::new(), 1))
}

/// Whether `x ↦ x^p + c` permutes `F_q`.
pub fn is_permutation_poly(p: u64, c: &Rational, q: u64) -> Result<bool> {
    if !crate::factorizer::is_prime_u64(q) {
        return Err(Error::InvalidArgument(format!("{q} is not prime")));
    }
    let c = reduce_rational(c, q)?;
    if q > DIRECT_PERMUTATION_LIMIT {
        return Ok(p.gcd(&(q - 1)) == 1);
    }
    let mut hit = vec![false; q as usize];
    for x in 0..q {
        let y = (pow_mod(x, p, q) + c) % q;
        if std::mem::replace(&mut hit[y as usize], true) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Primes up to `n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

pub const CLASS_ONE: &str = "one_mod_p";
pub const CLASS_NOT_ONE: &str = "not_one_mod_p";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRow {
    pub class: &'static str,
    pub primes_scanned: u64,
    #[serde(rename = "members_of_P")]
    pub members_of_p: u64,
    /// `None` when the class is empty.
    pub fraction: Option<Fraction>,
}

impl ClassRow {
    fn new(class: &'static str, scanned: u64, members: u64) -> Self {
        ClassRow {
            class,
            primes_scanned: scanned,
            members_of_p: members,
            fraction: (scanned > 0).then(|| Fraction::new(members, scanned)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitDensityReport {
    pub p: u64,
    pub c: Rational,
    pub b: Rational,
    #[serde(rename = "X")]
    pub x_max: u64,
    /// `q ≡ 1 (mod p)` first, then the rest (including `q = p`).
    pub rows: Vec<ClassRow>,
    /// Primes dividing a denominator of `c` or `b`, excluded from the counts.
    pub bad_primes: Vec<u64>,
    pub overall_fraction: Option<Fraction>,
    /// `(p - 2) / (p - 1)`
    pub predicted_density: Fraction,
}

impl OrbitDensityReport {
    pub fn class(&self, name: &str) -> Option<&ClassRow> {
        self.rows.iter().find(|r| r.class == name)
    }
}

#[derive(Clone, Copy, Default)]
struct Tally {
    one_scanned: u64,
    one_members: u64,
    other_scanned: u64,
    other_members: u64,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            one_scanned: self.one_scanned + o.one_scanned,
            one_members: self.one_members + o.one_members,
            other_scanned: self.other_scanned + o.other_scanned,
            other_members: self.other_members + o.other_members,
        }
    }
}

pub fn orbit_density_scan(p: u64, c: &Rational, b: &Rational, x_max: u64) -> Result<OrbitDensityReport> {
    orbit_density_scan_with_threads(p, c, b, x_max, 1)
}

/// Scans primes `q <= x_max` for membership of `q` in the prime-divisor set of
/// the orbit of `b` under `x^p + c`, split by `q mod p`.
///
/// Worker count does not affect the result.
pub fn orbit_density_scan_with_threads(
    p: u64,
    c: &Rational,
    b: &Rational,
    x_max: u64,
    threads: usize,
) -> Result<OrbitDensityReport> {
    if !crate::factorizer::is_prime_u64(p) {
        return Err(Error::InvalidArgument(format!("p = {p} is not prime")));
    }
    if x_max > MAX_ORBIT_MODULUS {
        return Err(Error::InvalidArgument(format!("X = {x_max} exceeds {MAX_ORBIT_MODULUS}")));
    }
    if threads == 0 {
        return Err(Error::InvalidArgument("threads must be >= 1".into()));
    }
    let d = u32::try_from(p).map_err(|_| Error::InvalidArgument(format!("p = {p} too large")))?;
    let map = UnicriticalMap::new(d, c.clone())?;
    if is_periodic_basepoint(&map, b) {
        return Err(Error::PeriodicBasepoint);
    }

    let primes = primes_up_to(x_max);
    let (good, bad): (Vec<u64>, Vec<u64>) = primes.into_iter().partition(|&q| {
        reduce_rational(c, q).is_ok() && reduce_rational(b, q).is_ok()
    });

    let scan_chunk = |chunk: &[u64]| {
        let mut stamps = Vec::new();
        let mut t = Tally::default();
        for (i, &q) in chunk.iter().enumerate() {
            let cq = reduce_rational(c, q).expect("good prime");
            let bq = reduce_rational(b, q).expect("good prime");
            let member = first_hit(d, cq, bq, q, &mut stamps, i as u32 + 1).is_some() as u64;
            if q % p == 1 {
                t.one_scanned += 1;
                t.one_members += member;
            } else {
                t.other_scanned += 1;
                t.other_members += member;
            }
        }
        t
    };

    let tally = if threads == 1 {
        scan_chunk(&good)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let chunk = good.len().div_ceil(threads * 8).max(1);
        pool.install(|| {
            good.par_chunks(chunk)
                .map(scan_chunk)
                .reduce(Tally::default, Tally::merge)
        })
    };

    let scanned = tally.one_scanned + tally.other_scanned;
    let members = tally.one_members + tally.other_members;
    Ok(OrbitDensityReport {
        p,
        c: c.clone(),
        b: b.clone(),
        x_max,
        rows: vec![
            ClassRow::new(CLASS_ONE, tally.one_scanned, tally.one_members),
            ClassRow::new(CLASS_NOT_ONE, tally.other_scanned, tally.other_members),
        ],
        bad_primes: bad,
        overall_fraction: (scanned > 0).then(|| Fraction::new(members, scanned)),
        predicted_density: Fraction::new(p - 2, p - 1),
    })
}

/// Smallest-prime-factor and totient tables on `0..=n` by a linear sieve.
/// Entry 1 has `spf = 1` and `φ = 1`.
pub fn spf_phi_sieve(n: usize) -> (Vec<u32>, Vec<u32>) {
    let mut spf = vec![0u32; n + 1];
    let mut phi = vec![0u32; n + 1];
    let mut primes: Vec<u32> = Vec::new();
    if n >= 1 {
        spf[1] = 1;
        phi[1] = 1;
    }
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            phi[i] = i as u32 - 1;
            primes.push(i as u32);
        }
        for &pr in &primes {
            let k = i * pr as usize;
            if pr > spf[i] || k > n {
                break;
            }
            spf[k] = pr;
            phi[k] = if pr == spf[i] { phi[i] * pr } else { phi[i] * (pr - 1) };
        }
    }
    (spf, phi)
}

/// Number of `1 <= d <= x` whose prime factors all exceed `m` (`d = 1` counts).
pub fn good_degree_count(x: u64, m: u64) -> u64 {
    let (spf, _) = spf_phi_sieve(x as usize);
    spf[1..].iter().filter(|&&s| s == 1 || s as u64 > m).count() as u64
}

/// `∏_{p <= m} (1 - 1/p)`.
pub fn mertens_product(m: u64) -> Rational {
    primes_up_to(m)
        .into_iter()
        .map(|p| Rational::new(p - 1, p))
        .product()
}

/// `e^{-γ} / ln m`, the asymptotic value of [`mertens_product`].
pub fn mertens_asymptotic(m: u64) -> Option<f64> {
    let gamma: f64 = EULER_GAMMA.parse().expect("constant parses");
    (m >= 2).then(|| (-gamma).exp() / (m as f64).ln())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeDensityReport {
    #[serde(rename = "X")]
    pub x_max: u64,
    /// Prime floor: counted degrees have every prime factor `> M`.
    #[serde(rename = "M")]
    pub m: u64,
    #[serde(rename = "C1")]
    pub c1: Option<f64>,
    pub count: u64,
    pub density: Fraction,
    #[serde(rename = "mertens_c_M")]
    pub mertens_c_m: Fraction,
    pub mertens_asymptotic: Option<f64>,
}

/// Counts `d <= x` with `φ(d) > C1·d` and `spf(d) > C2`.
pub fn degree_condition_density(c1: f64, c2: f64, x: u64) -> Result<DegreeDensityReport> {
    degree_density_report(Some(c1), c2, x, 1)
}

/// As [`degree_condition_density`]; without `C1` only the prime floor applies.
pub fn degree_density_report(c1: Option<f64>, c2: f64, x: u64, threads: usize) -> Result<DegreeDensityReport> {
    if let Some(c1) = c1 {
        if !(0.0..1.0).contains(&c1) {
            return Err(Error::InvalidArgument(format!("C1 = {c1} not in [0, 1)")));
        }
    }
    if !(c2 >= 1.0 && c2.is_finite()) {
        return Err(Error::InvalidArgument(format!("C2 = {c2} < 1")));
    }
    if x < 1 {
        return Err(Error::InvalidArgument("X must be >= 1".into()));
    }
    if threads == 0 {
        return Err(Error::InvalidArgument("threads must be >= 1".into()));
    }
    let floor = c2.floor() as u64;
    let (spf, phi) = spf_phi_sieve(x as usize);
    let ratio = c1.map(|c| Rational::from_f64(c).expect("finite"));
    let wide = ratio
        .as_ref()
        .map(|r| (r.numer().to_u128(), r.denom().to_u128()));

    let keep = |d: usize| -> bool {
        let s = spf[d] as u64;
        if d > 1 && s <= floor {
            return false;
        }
        match (&ratio, wide) {
            (None, _) => true,
            // φ(d)·den > num·d, in u128 when the operands fit
            (Some(_), Some((Some(num), Some(den)))) if num < 1 << 64 && den < 1 << 64 => {
                phi[d] as u128 * den > num * d as u128
            }
            (Some(r), _) => Rational::from(phi[d] as i64) > r * Rational::from(d as i64),
        }
    };
    let count = if threads == 1 {
        (1..=x as usize).filter(|&d| keep(d)).count()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        pool.install(|| (1..=x as usize).into_par_iter().filter(|&d| keep(d)).count())
    } as u64;

    Ok(DegreeDensityReport {
        x_max: x,
        m: floor,
        c1,
        count,
        density: Fraction::new(count, x),
        mertens_c_m: Fraction(mertens_product(floor)),
        mertens_asymptotic: mertens_asymptotic(floor),
    })
}

/// `t / (1 - ε)`: if `d` has at most `t` distinct prime factors, all above this
/// threshold, then `φ(d)/d >= ε`.
pub fn phi_ratio_threshold(t: u64, eps: f64) -> Result<f64> {
    if t < 1 || !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!("need t >= 1 and 0 < eps < 1, got t={t}, eps={eps}")));
    }
    Ok(t as f64 / (1.0 - eps))
}

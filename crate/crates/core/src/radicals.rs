//! Perfect-power structure of rationals: the maximal radical exponent,
//! Capelli's binomial criterion and power-witness search.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qnum::{rational_nth_root, Rational};

/// `v = -y^m` with `m | d` maximal and `r = d / m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalDecomposition {
    pub m: u64,
    pub y: Rational,
    pub r: u64,
    pub d: u64,
    pub v: Rational,
}

impl RadicalDecomposition {
    /// `-y^m`, which equals `v`.
    pub fn reassemble(&self) -> Rational {
        -self.y.pow(self.m as u32)
    }
}

/// Largest divisor `m` of `d` such that `v = -y^m` for a rational `y`.
pub fn max_radical_exponent(d: u64, v: &Rational) -> Result<RadicalDecomposition> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("degree {d} < 2")));
    }
    if v.is_zero() {
        return Err(Error::Degenerate);
    }
    let neg = -v;
    let divisors = arithmetic_functions(d).divisors;
    for &m in divisors.iter().rev() {
        if let Some(y) = rational_nth_root(&neg, m as u32) {
            return Ok(RadicalDecomposition {
                m,
                y,
                r: d / m,
                d,
                v: v.clone(),
            });
        }
    }
    unreachable!("m = 1 always succeeds")
}

/// Which clause of Capelli's criterion a binomial violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum CapelliObstruction {
    /// `a = z^p` for a prime `p | d`.
    PrimePower { p: u64, z: Rational },
    /// `4 | d` and `a = -4 b^4`.
    MinusFourFourthPower { b: Rational },
}

impl CapelliObstruction {
    pub fn reason(&self) -> String {
        match self {
            CapelliObstruction::PrimePower { p, z } => {
                format!("a = ({z})^{p} is a perfect power with prime exponent {p} dividing d")
            }
            CapelliObstruction::MinusFourFourthPower { b } => {
                format!("\u{2212}4\u{211a}\u{2074} clause: a = -4*({b})^4")
            }
        }
    }
}

/// Every Capelli obstruction for `x^d - a`; empty iff the binomial is irreducible over ℚ.
pub fn capelli_obstructions(d: u64, a: &Rational) -> Result<Vec<CapelliObstruction>> {
    if d < 1 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    if a.is_zero() {
        return Err(Error::ZeroArgument("binomial constant a = 0"));
    }
    let mut out = Vec::new();
    for p in prime_divisors(d) {
        if let Some(z) = rational_nth_root(a, p as u32) {
            out.push(CapelliObstruction::PrimePower { p, z });
        }
    }
    if d.is_multiple_of(4) {
        let w = -a / Rational::from(4);
        if let Some(b) = rational_nth_root(&w, 4) {
            out.push(CapelliObstruction::MinusFourFourthPower { b });
        }
    }
    Ok(out)
}

/// Capelli: `x^d - a` is irreducible over ℚ iff `a` is not a `p`-th power for any
/// prime `p | d`, and `a ∉ -4ℚ⁴` when `4 | d`.
pub fn binomial_irreducible(d: u64, a: &Rational) -> Result<bool> {
    Ok(capelli_obstructions(d, a)?.is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum PowerWitness {
    /// `v = ±z^p` for a prime `p`, `z > 0`.
    SignedPrimePower { p: u64, z: Rational, negative: bool },
    /// `v = (-1)^e1 · 4^e2 · z^m`.
    ScaledPower { e1: u8, e2: u8, m: u64, z: Rational },
}

impl PowerWitness {
    pub fn reassemble(&self) -> Rational {
        match self {
            PowerWitness::SignedPrimePower { p, z, negative } => {
                let v = z.pow(*p as u32);
                if *negative {
                    -v
                } else {
                    v
                }
            }
            PowerWitness::ScaledPower { e1, e2, m, z } => {
                let sign = if *e1 == 1 { -1 } else { 1 };
                let four = if *e2 == 1 { 4 } else { 1 };
                Rational::from(sign * four) * z.pow(*m as u32)
            }
        }
    }
}

/// All witnesses that `v` has one of the power shapes that can make `g∘f`
/// reducible for `f = x^d + c`; an empty list certifies that none exists.
pub fn find_power_witness(v: &Rational, d: u64) -> Result<Vec<PowerWitness>> {
    if v.is_zero() {
        return Err(Error::ZeroArgument("witness target v = 0"));
    }
    let mut out = Vec::new();
    let mag = v.abs();
    for p in prime_divisors(d) {
        if let Some(z) = rational_nth_root(&mag, p as u32) {
            out.push(PowerWitness::SignedPrimePower {
                p,
                z,
                negative: v.is_negative(),
            });
        }
    }
    if d.is_multiple_of(4) {
        let divisors = arithmetic_functions(d).divisors;
        for e1 in 0..=1u8 {
            for e2 in 0..=1u8 {
                let scale = Rational::from(if e1 == 1 { -1 } else { 1 } * if e2 == 1 { 4 } else { 1 });
                let w = v / &scale;
                for &m in divisors.iter().filter(|&&m| m > 1) {
                    if let Some(z) = rational_nth_root(&w, m as u32) {
                        out.push(PowerWitness::ScaledPower { e1, e2, m, z });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Divisor count, totient, divisor list and least prime factor of `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArithmeticFunctions {
    pub tau: u64,
    pub phi: u64,
    pub divisors: Vec<u64>,
    pub smallest_prime_factor: Option<u64>,
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor_u64(n).into_iter().map(|(p, _)| p).collect()
}

pub fn arithmetic_functions(n: u64) -> ArithmeticFunctions {
    assert!(n >= 1, "arithmetic functions need n >= 1");
    let fac = factor_u64(n);
    let tau = fac.iter().map(|&(_, e)| e as u64 + 1).product();
    let phi = fac
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product();
    let mut divisors = vec![1u64];
    for &(p, e) in &fac {
        let current = divisors.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            divisors.extend(current.iter().map(|d| d * pk));
        }
    }
    divisors.sort_unstable();
    ArithmeticFunctions {
        tau,
        phi,
        divisors,
        smallest_prime_factor: fac.first().map(|&(p, _)| p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorizer::factor_over_q;
    use crate::qpoly::QPoly;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn radical_examples() {
        let r = max_radical_exponent(2, &q("-16/9")).unwrap();
        assert_eq!((r.m, r.y.clone(), r.r), (2, q("4/3"), 1));
        let r = max_radical_exponent(10, &q("-1/1024")).unwrap();
        assert_eq!((r.m, r.y.clone(), r.r), (10, q("1/2"), 1));
        let r = max_radical_exponent(6, &q("5")).unwrap();
        assert_eq!((r.m, r.y.clone(), r.r), (1, q("-5"), 6));
        for d in 2..=12 {
            let r = max_radical_exponent(d, &q("-1")).unwrap();
            assert_eq!((r.m, r.y.clone(), r.r), (d, q("1"), 1));
        }
        assert_eq!(max_radical_exponent(4, &Rational::zero()), Err(Error::Degenerate));
    }

    #[test]
    fn binomial_examples() {
        assert!(!binomial_irreducible(4, &q("-4")).unwrap());
        assert!(binomial_irreducible(6, &q("2")).unwrap());
        assert!(factor_over_q(&"x^6-2".parse().unwrap(), 0).unwrap().is_irreducible());
        assert!(!binomial_irreducible(2, &q("9/4")).unwrap());
        assert!(binomial_irreducible(3, &Rational::zero()).is_err());
        let obs = capelli_obstructions(4, &q("-4")).unwrap();
        assert_eq!(obs, vec![CapelliObstruction::MinusFourFourthPower { b: q("1") }]);
        assert!(obs[0].reason().contains("clause"));
    }

    #[test]
    fn witness_examples() {
        let w = find_power_witness(&q("-27"), 3).unwrap();
        assert_eq!(
            w,
            vec![PowerWitness::SignedPrimePower {
                p: 3,
                z: q("3"),
                negative: true
            }]
        );
        let w = find_power_witness(&q("-64"), 4).unwrap();
        assert!(w.contains(&PowerWitness::ScaledPower {
            e1: 1,
            e2: 1,
            m: 4,
            z: q("2")
        }));
        for wit in &w {
            assert_eq!(wit.reassemble(), q("-64"));
        }
        assert!(find_power_witness(&q("5"), 3).unwrap().is_empty());
        assert!(find_power_witness(&Rational::zero(), 3).is_err());
    }

    #[test]
    fn five_is_not_a_small_cube() {
        // exhaustive: (a/b)^3 = 5 has no solution with b <= 200
        for b in 1..=200i64 {
            let target = 5 * b * b * b;
            let a = (target as f64).cbrt().round() as i64;
            for c in a - 1..=a + 1 {
                assert_ne!(c * c * c, target);
            }
        }
    }

    #[test]
    fn arithmetic_examples() {
        let a = arithmetic_functions(12);
        assert_eq!((a.tau, a.phi, a.smallest_prime_factor), (6, 4, Some(2)));
        assert_eq!(a.divisors, vec![1, 2, 3, 4, 6, 12]);
        let a = arithmetic_functions(25);
        assert_eq!((a.tau, a.phi, a.smallest_prime_factor), (3, 20, Some(5)));
        let a = arithmetic_functions(1);
        assert_eq!((a.tau, a.phi, a.smallest_prime_factor), (1, 1, None));
        assert_eq!(a.divisors, vec![1]);
    }

    #[test]
    fn capelli_agrees_with_factorizer_small() {
        for d in 2..=6u64 {
            for a in -12..=12i64 {
                if a == 0 {
                    continue;
                }
                let a = Rational::from(a);
                let f = &QPoly::monomial(Rational::one(), d as usize) - &QPoly::constant(a.clone());
                let irr = factor_over_q(&f, 0).unwrap().is_irreducible();
                assert_eq!(binomial_irreducible(d, &a).unwrap(), irr, "x^{d} - {a}");
            }
        }
    }

    fn nonzero_rational() -> impl Strategy<Value = Rational> {
        (-30i64..=30, 1i64..=30)
            .prop_filter("nonzero", |(a, _)| *a != 0)
            .prop_map(|(a, b)| Rational::new(a, b))
    }

    proptest! {
        #[test]
        fn radical_reassembles_and_is_maximal(t in nonzero_rational(), d in 2u64..=12, pick in 0usize..16) {
            let divs = arithmetic_functions(d).divisors;
            let k = divs[pick % divs.len()];
            let v = -t.pow(k as u32);
            let r = max_radical_exponent(d, &v).unwrap();
            prop_assert_eq!(r.reassemble(), v.clone());
            prop_assert_eq!(r.m * r.r, d);
            prop_assert!(r.m >= k);
            for &m2 in divs.iter().filter(|&&m2| m2 > r.m) {
                prop_assert!(rational_nth_root(&-&v, m2 as u32).is_none());
            }
        }

        #[test]
        fn witness_found_for_prime_powers(t in nonzero_rational(), d in 2u64..=30) {
            for p in prime_divisors(d) {
                let v = -t.pow(p as u32);
                let w = find_power_witness(&v, d).unwrap();
                prop_assert!(!w.is_empty());
                for wit in w {
                    prop_assert_eq!(wit.reassemble(), v.clone());
                }
            }
        }
    }
}

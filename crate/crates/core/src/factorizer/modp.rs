//! Factorization of squarefree polynomials over `F_p`: distinct-degree
//! splitting followed by Cantor–Zassenhaus equal-degree splitting.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::fp::{inv_mod, FpPoly, MAX_PRIME};
use crate::qpoly::QPoly;

/// Irreducible factorization of a polynomial modulo `prime`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModPFactorization {
    pub prime: u64,
    /// Leading coefficient of the reduced input.
    pub lc: u64,
    /// Monic irreducible factors in canonical order.
    pub factors: Vec<FpPoly>,
}

impl ModPFactorization {
    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(FpPoly::deg).collect()
    }

    pub fn product(&self) -> FpPoly {
        self.factors
            .iter()
            .fold(FpPoly::one(self.prime).scale(self.lc), |acc, f| acc.mul(f))
    }
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Reduces a rational polynomial modulo `p`; fails if a denominator is divisible by `p`.
pub(crate) fn reduce_qpoly(f: &QPoly, p: u64) -> Result<FpPoly> {
    let pb = num_bigint::BigInt::from(p);
    let mut out = Vec::with_capacity(f.coeffs().len());
    for c in f.coeffs() {
        let num = num_integer::Integer::mod_floor(c.numer(), &pb);
        let den = num_integer::Integer::mod_floor(c.denom(), &pb);
        let num: u64 = num.try_into().expect("residue fits");
        let den: u64 = den.try_into().expect("residue fits");
        if den == 0 {
            return Err(Error::BadPrime(p));
        }
        out.push(num * inv_mod(den, p) % p);
    }
    Ok(FpPoly::new(p, out))
}

/// Full factorization over `F_p` of a polynomial with `p`-integral coefficients.
///
/// The seed only steers the random splitting; the returned factors are in
/// canonical order and do not depend on it.
pub fn factor_mod_p(f: &QPoly, p: u64, seed: u64) -> Result<ModPFactorization> {
    if p == 2 || p > MAX_PRIME || !is_prime_u64(p) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime below 2^32")));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fp = reduce_qpoly(f, p)?;
    if fp.deg() != f.deg() || !fp.is_squarefree() {
        return Err(Error::BadPrime(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(factor_squarefree_fp(&fp, &mut rng))
}

pub(crate) fn factor_squarefree_fp(f: &FpPoly, rng: &mut ChaCha8Rng) -> ModPFactorization {
    let p = f.modulus();
    let monic = f.monic();
    let mut factors = Vec::new();
    for (d, block) in distinct_degree(&monic) {
        equal_degree(&block, d, rng, &mut factors);
    }
    factors.sort_by(FpPoly::canonical_cmp);
    ModPFactorization {
        prime: p,
        lc: f.lc(),
        factors,
    }
}

/// Groups the irreducible factors of a monic squarefree polynomial by degree.
pub(crate) fn distinct_degree(f: &FpPoly) -> Vec<(usize, FpPoly)> {
    let p = f.modulus();
    let x = FpPoly::x(p);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut i = 0;
    while rest.deg() >= 2 * (i + 1) {
        i += 1;
        h = h.pow_mod(p, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((i, g));
        }
    }
    if rest.deg() > 0 {
        out.push((rest.deg(), rest));
    }
    out
}

/// Splits a monic product of distinct irreducibles of common degree `d`.
fn equal_degree(g: &FpPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let n = g.deg();
    if n == d {
        out.push(g.clone());
        return;
    }
    let p = g.modulus();
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() == 0 {
            continue;
        }
        let common = g.gcd(&a);
        let splitter = if !common.is_one() {
            common
        } else {
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p - 1)/2)
            let mut t = a.rem(g);
            let mut norm = t.clone();
            for _ in 1..d {
                t = t.pow_mod(p, g);
                norm = norm.mul(&t).rem(g);
            }
            let b = norm.pow_mod((p - 1) / 2, g);
            g.gcd(&b.sub(&FpPoly::one(p)))
        };
        if splitter.deg() > 0 && splitter.deg() < n {
            let other = g.div_rem(&splitter).0;
            equal_degree(&splitter, d, rng, out);
            equal_degree(&other, d, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(s: &str, p: u64) -> Vec<Vec<u64>> {
        factor_mod_p(&s.parse().unwrap(), p, 0)
            .unwrap()
            .factors
            .iter()
            .map(|f| f.coeffs().to_vec())
            .collect()
    }

    #[test]
    fn examples() {
        // 2^2 = 4 = -1 mod 5
        assert_eq!(fac("x^2+1", 5), vec![vec![2, 1], vec![3, 1]]);
        assert_eq!(fac("x^2+1", 3), vec![vec![1, 0, 1]]);
        assert_eq!(fac("x^3-x", 3), vec![vec![0, 1], vec![1, 1], vec![2, 1]]);
    }

    #[test]
    fn bad_primes() {
        assert_eq!(
            factor_mod_p(&"3x^2+1".parse().unwrap(), 3, 0),
            Err(Error::BadPrime(3))
        );
        assert_eq!(
            factor_mod_p(&"x^2+2x+1".parse().unwrap(), 5, 0),
            Err(Error::BadPrime(5))
        );
        assert_eq!(
            factor_mod_p(&"x^2+1/3".parse().unwrap(), 3, 0),
            Err(Error::BadPrime(3))
        );
        assert!(matches!(
            factor_mod_p(&"x^2+1".parse().unwrap(), 9, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn seeds_agree_and_product_matches() {
        let f: QPoly = "x^12 - 3x^7 + 5x^3 + x + 11".parse().unwrap();
        for p in [7u64, 13, 101] {
            let Ok(a) = factor_mod_p(&f, p, 0) else { continue };
            let b = factor_mod_p(&f, p, 12345).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.product(), reduce_qpoly(&f, p).unwrap());
            for g in &a.factors {
                let dd = distinct_degree(g);
                assert_eq!(dd.len(), 1);
                assert_eq!(dd[0].0, g.deg(), "factor must be irreducible");
            }
        }
    }

    #[test]
    fn splits_products_of_many_linears() {
        // x^(p-1) - 1 splits into p-1 linear factors
        let f: QPoly = "x^30 - 1".parse().unwrap();
        let m = factor_mod_p(&f, 31, 7).unwrap();
        assert_eq!(m.factors.len(), 30);
        assert!(m.factors.iter().all(|g| g.deg() == 1));
    }
}

//! Complete factorization over ℚ: modular factorization at a well-chosen
//! prime, Hensel lifting past a coefficient bound, and subset recombination.

mod hensel;
mod modp;

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use hensel::hensel_lift;
pub use modp::{factor_mod_p, ModPFactorization};

pub(crate) use modp::is_prime_u64;

use crate::error::{Error, Result};
use crate::qnum::Rational;
use crate::qpoly::{squarefree_decompose, QPoly, DEFAULT_DEGREE_CAP};
use crate::zpoly::ZPoly;

/// Number of good primes examined before choosing the one with fewest modular factors.
const PRIME_CANDIDATES: usize = 5;

/// `unit · ∏ poly^multiplicity`, with each `poly` primitive, irreducible over ℚ,
/// with positive leading coefficient, listed in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(ZPoly, u32)>,
}

impl Factorization {
    pub fn distinct_count(&self) -> usize {
        self.factors.len()
    }

    pub fn with_multiplicity_count(&self) -> usize {
        self.factors.iter().map(|(_, m)| *m as usize).sum()
    }

    /// Factor degrees, one entry per factor counted with multiplicity, sorted.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(g, m)| std::iter::repeat_n(g.deg(), *m as usize))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn reassemble(&self) -> QPoly {
        self.factors
            .iter()
            .fold(QPoly::constant(self.unit.clone()), |acc, (g, m)| {
                &acc * &QPoly::from_zpoly(g).pow(*m)
            })
    }
}

/// `2^deg · ⌈‖f‖₂⌉ · |lc(f)|`, a bound on the coefficients of any integer factor of `f`.
pub fn mignotte_bound(f: &ZPoly) -> BigUint {
    assert!(!f.is_zero(), "coefficient bound of the zero polynomial");
    let n2 = f.norm2_squared();
    let mut root = n2.sqrt();
    if &root * &root < n2 {
        root += 1u32;
    }
    (BigUint::one() << f.deg()) * root * f.lc().magnitude()
}

pub fn factor_over_q(f: &QPoly, seed: u64) -> Result<Factorization> {
    factor_over_q_with_cap(f, seed, DEFAULT_DEGREE_CAP)
}

pub fn factor_over_q_with_cap(f: &QPoly, seed: u64, cap: usize) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.deg() > cap {
        return Err(Error::DegreeCapExceeded {
            degree: f.deg(),
            cap,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sq = squarefree_decompose(f)?;
    let mut factors = Vec::new();
    for (part, mult) in &sq.factors {
        let (_, z) = part.to_primitive_zpoly();
        for g in factor_squarefree(&z, &mut rng)? {
            factors.push((g, *mult));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    let lc_product = factors.iter().fold(BigInt::one(), |acc, (g, m)| {
        acc * num_traits::pow(g.lc(), *m as usize)
    });
    let unit = f.lc() / Rational::from(lc_product);
    Ok(Factorization { unit, factors })
}

/// Degrees achievable as a product of a subset of the modular factors.
fn subset_degree_sums(degrees: &[usize]) -> BTreeSet<usize> {
    let total: usize = degrees.iter().sum();
    let mut reach = vec![false; total + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=total).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    (0..=total).filter(|&s| reach[s]).collect()
}

/// Irreducible factors of a primitive squarefree integer polynomial.
fn factor_squarefree(f: &ZPoly, rng: &mut ChaCha8Rng) -> Result<Vec<ZPoly>> {
    let n = f.deg();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![f.primitive_part()]);
    }
    if f.constant_term().is_zero() {
        let x = ZPoly::x();
        let rest = f.div_exact(&x).expect("x divides f");
        let mut out = vec![x];
        out.extend(factor_squarefree(&rest, rng)?);
        return Ok(out);
    }

    // Good primes: odd, not dividing lc(f), f squarefree modulo p.
    let lc = f.lc();
    let mut candidates: Vec<ModPFactorization> = Vec::new();
    let mut allowed: Option<BTreeSet<usize>> = None;
    let mut p = 3u64;
    while candidates.len() < PRIME_CANDIDATES {
        if is_prime_u64(p) && !(&lc % p).is_zero() {
            let fp = f.to_fp(p);
            if fp.is_squarefree() {
                let m = modp::factor_squarefree_fp(&fp, rng);
                let sums = subset_degree_sums(&m.degrees());
                allowed = Some(match allowed {
                    None => sums,
                    Some(a) => a.intersection(&sums).copied().collect(),
                });
                if m.factors.len() == 1 || allowed.as_ref().is_some_and(|a| a.len() == 2) {
                    return Ok(vec![f.clone()]);
                }
                candidates.push(m);
            }
        }
        p += 2;
    }
    let allowed = allowed.expect("at least one good prime");
    let best = candidates
        .into_iter()
        .min_by_key(|m| (m.factors.len(), m.prime))
        .expect("nonempty");

    let target = BigInt::from(mignotte_bound(f)) * 2u32 * lc.abs();
    let pb = BigInt::from(best.prime);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= target {
        pk *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, &best, k)?;
    Ok(recombine(f, lifted, &pk, &allowed))
}

/// Zassenhaus recombination by subsets of increasing size.
fn recombine(f: &ZPoly, lifted: Vec<ZPoly>, modulus: &BigInt, allowed: &BTreeSet<usize>) -> Vec<ZPoly> {
    let mut remaining: Vec<ZPoly> = lifted;
    let mut f = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        match find_factor_of_size(&f, &remaining, size, modulus, allowed) {
            Some((subset, g)) => {
                f = f.div_exact(&g).expect("verified divisor");
                found.push(g);
                for &i in subset.iter().rev() {
                    remaining.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if f.deg() > 0 {
        found.push(f.primitive_part());
    }
    found
}

fn find_factor_of_size(
    f: &ZPoly,
    lifted: &[ZPoly],
    size: usize,
    modulus: &BigInt,
    allowed: &BTreeSet<usize>,
) -> Option<(Vec<usize>, ZPoly)> {
    let lc = f.lc();
    let f0 = f.constant_term();
    let lc_f0 = &lc * &f0;
    let half = modulus >> 1;
    let sym = |x: BigInt| {
        let r = x.mod_floor(modulus);
        if r > half {
            r - modulus
        } else {
            r
        }
    };
    let mut idx: Vec<usize> = (0..size).collect();
    let r = lifted.len();
    loop {
        let degree: usize = idx.iter().map(|&i| lifted[i].deg()).sum();
        if allowed.contains(&degree) && degree < f.deg() {
            let tc = sym(idx
                .iter()
                .fold(lc.clone(), |acc, &i| (acc * lifted[i].constant_term()).mod_floor(modulus)));
            let passes = if f0.is_zero() {
                true
            } else {
                !tc.is_zero() && (&lc_f0 % &tc).is_zero()
            };
            if passes {
                let prod = idx.iter().fold(ZPoly::constant(lc.clone()), |acc, &i| {
                    acc.mul(&lifted[i]).mod_floor(modulus)
                });
                let g = prod.symmetric_mod(modulus).primitive_part();
                if g.deg() > 0 && f.div_exact(&g).is_some() {
                    return Some((idx, g));
                }
            }
        }
        // next combination in lexicographic order
        let mut i = size;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < r - size + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

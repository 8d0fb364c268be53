//! Quadratic Hensel lifting of a modular factorization to `p^k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::modp::ModPFactorization;
use crate::error::{Error, Result};
use crate::fp::FpPoly;
use crate::zpoly::ZPoly;

fn from_fp(f: &FpPoly) -> ZPoly {
    ZPoly::new(f.coeffs().iter().map(|&c| BigInt::from(c)).collect())
}

/// Quotient and remainder by a monic `h`, coefficients reduced into `[0, m)`.
fn div_rem_monic_mod(a: &ZPoly, h: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let dh = h.deg();
    let mut r: Vec<BigInt> = a.coeffs().iter().map(|c| c.mod_floor(m)).collect();
    if r.len() <= dh {
        return (ZPoly::zero(), ZPoly::new(r));
    }
    let mut q = vec![BigInt::zero(); r.len() - dh];
    for k in (0..q.len()).rev() {
        let t = r[k + dh].mod_floor(m);
        if t.is_zero() {
            continue;
        }
        for (j, hc) in h.coeffs().iter().enumerate() {
            r[k + j] = (&r[k + j] - &t * hc).mod_floor(m);
        }
        q[k] = t;
    }
    r.truncate(dh);
    (ZPoly::new(q), ZPoly::new(r))
}

fn mulmod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    a.mul(b).mod_floor(m)
}

/// Lifts `f ≡ g·h (mod p)` to `f ≡ G·H (mod p^(2^j))` with `p^(2^j) >= bound`.
///
/// `h` is monic; `g` carries the leading coefficient of `f`.
fn lift_pair(f: &ZPoly, g: &ZPoly, h: &ZPoly, p: u64, bound: &BigInt) -> Result<(ZPoly, ZPoly)> {
    let (gcd, s, t) = g.to_fp(p).ext_gcd(&h.to_fp(p));
    if !gcd.is_one() {
        return Err(Error::LiftFailure);
    }
    let (mut g, mut h) = (g.clone(), h.clone());
    let (mut s, mut t) = (from_fp(&s), from_fp(&t));
    let mut m = BigInt::from(p);
    while &m < bound {
        let m2 = &m * &m;
        let e = f.sub(&g.mul(&h)).mod_floor(&m2);
        let (q, r) = div_rem_monic_mod(&mulmod(&s, &e, &m2), &h, &m2);
        let g_new = g.add(&t.mul(&e)).add(&q.mul(&g)).mod_floor(&m2);
        let h_new = h.add(&r).mod_floor(&m2);
        let b = s
            .mul(&g_new)
            .add(&t.mul(&h_new))
            .sub(&ZPoly::one())
            .mod_floor(&m2);
        let (c, d) = div_rem_monic_mod(&mulmod(&s, &b, &m2), &h_new, &m2);
        s = s.sub(&d).mod_floor(&m2);
        t = t.sub(&t.mul(&b)).sub(&c.mul(&g_new)).mod_floor(&m2);
        g = g_new;
        h = h_new;
        m = m2;
    }
    Ok((g, h))
}

/// Lifts a modular factorization of `f` to monic factors modulo `p^k`.
///
/// The result satisfies `lc(f) · ∏ factors ≡ f (mod p^k)`, each factor is
/// congruent to its input modulo `p`, and coefficients are symmetric residues.
pub fn hensel_lift(f: &ZPoly, modp: &ModPFactorization, k: u32) -> Result<Vec<ZPoly>> {
    let p = modp.prime;
    if k == 0 || modp.factors.is_empty() {
        return Err(Error::LiftFailure);
    }
    let fp = f.to_fp(p);
    if fp.deg() != f.deg() || fp != modp.product() {
        return Err(Error::LiftFailure);
    }
    let modulus = num_traits::pow(BigInt::from(p), k as usize);
    let lc_inv = f
        .lc()
        .mod_floor(&modulus)
        .extended_gcd(&modulus)
        .x
        .mod_floor(&modulus);

    let factors = &modp.factors;
    let mut lifted = Vec::with_capacity(factors.len());
    let mut current = f.clone();
    for i in 0..factors.len() - 1 {
        let lc_p = current.lc().mod_floor(&BigInt::from(p));
        let lc_p: u64 = lc_p.try_into().expect("residue fits");
        let g0 = from_fp(&factors[i].scale(lc_p));
        let h0 = from_fp(
            &factors[i + 1..]
                .iter()
                .fold(FpPoly::one(p), |acc, u| acc.mul(u)),
        );
        let (g, h) = lift_pair(&current, &g0, &h0, p, &modulus)?;
        lifted.push(g);
        current = h;
    }
    lifted.push(current);

    // Only the first factor carries lc(f); normalize it to be monic.
    lifted[0] = lifted[0].scale(&lc_inv);
    let lifted: Vec<ZPoly> = lifted.iter().map(|g| g.symmetric_mod(&modulus)).collect();

    let check = lifted
        .iter()
        .fold(ZPoly::one(), |acc, g| acc.mul(g).mod_floor(&modulus))
        .scale(&f.lc());
    if check.symmetric_mod(&modulus) != f.symmetric_mod(&modulus) {
        return Err(Error::LiftFailure);
    }
    Ok(lifted)
}

//! Dense univariate polynomials over ℚ.
//!
//! Text formats: human form such as `x^5 - 32` or `1/9*x^2 - 16/9`, and list
//! form `[c0,c1,...,cn]` (constant term first). Both parse back from what
//! [`QPoly`]'s `Display` and [`QPoly::to_list_string`] print.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::dynamics::UnicriticalMap;
use crate::error::{Error, Result};
use crate::qnum::Rational;
use crate::zpoly::ZPoly;

/// Largest degree any iterate or factorization input may reach by default.
pub const DEFAULT_DEGREE_CAP: usize = 4096;

/// Odd primes tried for modular shortcuts (coprimality, squarefreeness).
const SHORTCUT_PRIMES: [u64; 6] = [3, 5, 7, 11, 13, 17];

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn from_zpoly(z: &ZPoly) -> Self {
        Self::new(z.coeffs().iter().cloned().map(Rational::from).collect())
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rational, exp: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); exp + 1];
        coeffs[exp] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, k: &Rational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let mut acc = QPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(x^k)`.
    pub fn inflate(&self, k: usize) -> QPoly {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); self.deg() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        QPoly::new(coeffs)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        if self.coeffs.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let inv = d.lc().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            if r[k + dd].is_zero() {
                continue;
            }
            let t = &r[k + dd] * &inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let sub = &t * dc;
                r[k + j] -= &sub;
            }
            q[k] = t;
        }
        r.truncate(dd);
        (QPoly::new(q), QPoly::new(r))
    }

    /// Exact quotient; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &QPoly) -> Option<QPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Splits `self = content · z` with `z` primitive in ℤ[x] and positive leading coefficient.
    pub fn to_primitive_zpoly(&self) -> (Rational, ZPoly) {
        if self.is_zero() {
            return (Rational::zero(), ZPoly::zero());
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let z = ZPoly::new(ints);
        let mut g = z.content();
        if z.lc().is_negative() {
            g = -g;
        }
        let prim = ZPoly::new(z.coeffs().iter().map(|c| c / &g).collect());
        (Rational::new(g, den), prim)
    }

    /// `[c0,c1,...,cn]`.
    pub fn to_list_string(&self) -> String {
        let body: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        format!("[{}]", body.join(","))
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        // multiply over ℤ after clearing denominators
        let (ca, za) = self.to_primitive_zpoly();
        let (cb, zb) = other.to_primitive_zpoly();
        let prod = QPoly::from_zpoly(&za.mul(&zb));
        prod.scale(&(ca * cb))
    }
}

/// `g(f(x))` by Horner's rule.
pub fn compose(g: &QPoly, f: &QPoly) -> QPoly {
    let mut acc = QPoly::zero();
    for c in g.coeffs.iter().rev() {
        acc = &(&acc * f) + &QPoly::constant(c.clone());
    }
    acc
}

/// `f^n(x) - α` for `f = x^d + c`, with the default degree cap.
pub fn iterate_shifted(map: &UnicriticalMap, n: u32, alpha: &Rational) -> Result<QPoly> {
    iterate_shifted_with_cap(map, n, alpha, DEFAULT_DEGREE_CAP)
}

pub fn iterate_shifted_with_cap(
    map: &UnicriticalMap,
    n: u32,
    alpha: &Rational,
    cap: usize,
) -> Result<QPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("iterate index must be >= 1".into()));
    }
    let degree = (map.d as usize)
        .checked_pow(n)
        .filter(|&deg| deg <= cap)
        .ok_or(Error::DegreeCapExceeded {
            degree: (map.d as usize).saturating_pow(n),
            cap,
        })?;
    let f = map.as_poly();
    let mut it = f.clone();
    for _ in 1..n {
        it = compose(&f, &it);
    }
    debug_assert_eq!(it.deg(), degree);
    Ok(&it - &QPoly::constant(alpha.clone()))
}

/// Cheap certificate that two nonzero integer polynomials are coprime over ℚ:
/// their images modulo some prime of good reduction are coprime.
fn coprime_mod_small_prime(a: &ZPoly, b: &ZPoly) -> bool {
    SHORTCUT_PRIMES.iter().any(|&p| {
        let (fa, fb) = (a.to_fp(p), b.to_fp(p));
        fa.deg() == a.deg() && fb.deg() == b.deg() && fa.gcd(&fb).is_one()
    })
}

/// Monic gcd over ℚ.
pub fn gcd(f: &QPoly, g: &QPoly) -> Result<QPoly> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(Error::GcdOfZeros),
        (false, true) => return Ok(f.monic()),
        (true, false) => return Ok(g.monic()),
        _ => {}
    }
    let (_, a) = f.to_primitive_zpoly();
    let (_, b) = g.to_primitive_zpoly();
    if a.deg() == 0 || b.deg() == 0 || coprime_mod_small_prime(&a, &b) {
        return Ok(QPoly::one());
    }
    Ok(QPoly::from_zpoly(&a.gcd_primitive(&b)).monic())
}

/// `unit · ∏ factor^multiplicity`, factors monic, squarefree and pairwise coprime.
#[derive(Clone, Debug, PartialEq)]
pub struct SquarefreeDecomposition {
    pub unit: Rational,
    pub factors: Vec<(QPoly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn reassemble(&self) -> QPoly {
        self.factors
            .iter()
            .fold(QPoly::constant(self.unit.clone()), |acc, (f, m)| {
                &acc * &f.pow(*m)
            })
    }
}

/// Yun's squarefree decomposition over ℚ.
pub fn squarefree_decompose(f: &QPoly) -> Result<SquarefreeDecomposition> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.lc();
    if f.is_constant() {
        return Ok(SquarefreeDecomposition {
            unit,
            factors: Vec::new(),
        });
    }
    let monic = f.monic();
    let (_, z) = f.to_primitive_zpoly();
    let squarefree_mod_p = SHORTCUT_PRIMES.iter().any(|&p| {
        let fp = z.to_fp(p);
        fp.deg() == z.deg() && fp.is_squarefree()
    });
    if squarefree_mod_p {
        return Ok(SquarefreeDecomposition {
            unit,
            factors: vec![(monic, 1)],
        });
    }

    let mut factors = Vec::new();
    let df = monic.derivative();
    let a0 = gcd(&monic, &df)?;
    let mut b = monic.div_exact(&a0).expect("gcd divides");
    let c = df.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1u32;
    while !b.is_constant() {
        let a = gcd(&b, &d)?;
        let nb = b.div_exact(&a).expect("gcd divides");
        let nc = d.div_exact(&a).expect("gcd divides");
        d = &nc - &nb.derivative();
        if !a.is_constant() {
            factors.push((a, i));
        }
        b = nb;
        i += 1;
    }
    Ok(SquarefreeDecomposition { unit, factors })
}

/// The `a`-th cyclotomic polynomial.
pub fn cyclotomic(a: u64) -> QPoly {
    assert!(a >= 1, "cyclotomic index must be positive");
    let mut memo = HashMap::new();
    QPoly::from_zpoly(&cyclotomic_z(a, &mut memo))
}

fn cyclotomic_z(a: u64, memo: &mut HashMap<u64, ZPoly>) -> ZPoly {
    if let Some(p) = memo.get(&a) {
        return p.clone();
    }
    let mut coeffs = vec![BigInt::zero(); a as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[a as usize] = BigInt::one();
    let mut acc = ZPoly::new(coeffs);
    for e in 1..a {
        if a.is_multiple_of(e) {
            let phi_e = cyclotomic_z(e, memo);
            acc = acc.div_exact(&phi_e).expect("cyclotomic factors divide x^a - 1");
        }
    }
    memo.insert(a, acc.clone());
    acc
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match e {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            };
            if e == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if let Some(inner) = text.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unterminated list in {s:?}")))?;
            if inner.is_empty() {
                return Ok(QPoly::zero());
            }
            let coeffs = inner
                .split(',')
                .map(str::parse::<Rational>)
                .collect::<Result<Vec<_>>>()?;
            return Ok(QPoly::new(coeffs));
        }

        let bytes = text.as_bytes();
        let mut terms = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'^' | b'*' | b'/')
            {
                terms.push(&text[start..i]);
                start = i;
            }
        }
        terms.push(&text[start..]);

        let mut acc: Vec<Rational> = Vec::new();
        for term in terms {
            let (coef, exp) = parse_term(term).ok_or_else(|| {
                Error::Parse(format!("invalid term {term:?} in polynomial {s:?}"))
            })?;
            if acc.len() <= exp {
                acc.resize(exp + 1, Rational::zero());
            }
            acc[exp] += &coef;
        }
        Ok(QPoly::new(acc))
    }
}

fn parse_term(term: &str) -> Option<(Rational, usize)> {
    let (neg, body) = match term.as_bytes().first()? {
        b'+' => (false, &term[1..]),
        b'-' => (true, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return None;
    }
    let (coef, exp) = match body.find('x') {
        None => (body.parse::<Rational>().ok()?, 0),
        Some(pos) => {
            let head = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
            let coef = if head.is_empty() {
                Rational::one()
            } else {
                head.parse::<Rational>().ok()?
            };
            let tail = &body[pos + 1..];
            let exp = if tail.is_empty() {
                1
            } else {
                let digits = tail.strip_prefix('^')?;
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return None;
                }
                digits.parse::<usize>().ok()?
            };
            (coef, exp)
        }
    };
    Some((if neg { -coef } else { coef }, exp))
}

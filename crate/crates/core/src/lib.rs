//! Exact arithmetic and experiments for iterates of unicritical polynomials
//! `x^d + c` over ℚ: factorization of `f^n(x) - α`, the radical structure
//! behind it, and prime-divisor densities of critical orbits.

pub mod cli;
pub mod densities;
pub mod dynamics;
pub mod error;
pub mod factorizer;
pub mod fp;
pub mod qnum;
pub mod qpoly;
pub mod radicals;
pub mod zpoly;

pub use dynamics::{StabilityProblem, UnicriticalMap};
pub use error::{Error, Result};
pub use factorizer::{factor_over_q, Factorization};
pub use qnum::Rational;
pub use qpoly::QPoly;
pub use zpoly::ZPoly;

use thiserror::Error;

/// Errors raised by the algebra kernels and experiment drivers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero undefined")]
    ValuationOfZero,
    #[error("degree cap exceeded: degree {degree} > cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("gcd of two zero polynomials")]
    GcdOfZeros,
    #[error("bad prime {0}")]
    BadPrime(u64),
    #[error("lift failure")]
    LiftFailure,
    #[error("degenerate: c = α")]
    Degenerate,
    #[error("orbit blowup after {computed} iterates")]
    OrbitBlowup { computed: usize },
    #[error("basepoint periodic; P undefined")]
    PeriodicBasepoint,
    #[error("zero argument: {0}")]
    ZeroArgument(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

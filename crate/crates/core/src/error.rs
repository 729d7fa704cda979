use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic must be an odd prime, got {0}")]
    NotOddPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("order {size} exceeds the configured limit {limit}")]
    TooLarge { size: u64, limit: u64 },
    #[error("no monic irreducible polynomial of degree {n} found over F_{p}")]
    NoIrreduciblePolynomialFound { p: u32, n: u32 },
    #[error("leading coefficient must be nonzero")]
    ZeroLeadingCoefficient,
    #[error("character twist must be a nonzero element")]
    ZeroTwist,
    #[error("invalid Lebesgue exponent {0}, expected a value in [1, inf]")]
    InvalidExponent(f64),
    #[error("measure tag mismatch: expected {expected}, found {found}")]
    WrongMeasureTag { expected: &'static str, found: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid dimension {0}")]
    InvalidDimension(usize),
    #[error("radius must be nonzero")]
    ZeroRadius,
    #[error("operation requires even d, got d = {0}")]
    OddDimension(usize),
    #[error("-1 is not a square in F_{0}")]
    MinusOneNotSquare(u32),
    #[error("no admissible base point on the sphere: {0}")]
    NoBasePointFound(String),
    #[error("function is not invariant under scaling of its last coordinate")]
    NotLayFunction,
    #[error("function is not homogeneous of degree zero")]
    NotHomogeneousZero,
    #[error("test function is identically zero")]
    ZeroFunction,
    #[error("variety has no subspace construction: {0}")]
    UnsupportedVariety(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

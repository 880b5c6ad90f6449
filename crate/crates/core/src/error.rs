use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is not supported, need p > 3")]
    SmallCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field size {p}^{k} exceeds 2^63")]
    FieldOverflow { p: u64, k: u32 },
    #[error("coefficient vector has length {got}, expected {expected}")]
    BadCoefficients { expected: usize, got: usize },
    #[error("inverse of zero requested in a field of {0} elements")]
    ZeroInverse(u64),
    #[error("invalid discriminant {value}: {reason}")]
    InvalidDiscriminant { value: i64, reason: &'static str },
    #[error("curve y^2 = x^3 + a4 x + a6 is singular")]
    SingularCurve,
    #[error("field of {q} elements is larger than the limit {limit} for {what}")]
    FieldTooLarge {
        q: u64,
        limit: u64,
        what: &'static str,
    },
    #[error("trace {t} violates the Hasse bound for q = {q}")]
    HasseViolation { t: i64, q: u64 },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("invalid level structure: {0}")]
    InvalidLevel(String),
    #[error("weighted level census is not an integer: {0}")]
    NonIntegralMass(String),
    #[error("formula undefined: {0}")]
    FormulaUndefined(String),
    #[error("family file line {line}: {msg}")]
    ParseFamily { line: usize, msg: String },
    #[error("family has a singular generic fiber")]
    SingularFamily,
    #[error("family is isotrivial (constant j-invariant)")]
    IsotrivialFamily,
    #[error("conjugate fibers disagree: trace {first} at {rep} but {other} at {member}")]
    ConjugateMismatch {
        rep: u64,
        member: u64,
        first: i64,
        other: i64,
    },
    #[error("invalid angle: {0}")]
    InvalidAngle(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

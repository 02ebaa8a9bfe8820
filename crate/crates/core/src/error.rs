use thiserror::Error;

/// Errors raised by the root-datum, coefficient, cocycle and factor layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported root system {family}{rank}")]
    UnsupportedType { family: String, rank: usize },
    #[error("simple reflection index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("invalid diagram automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("{0} is not a simple restricted root")]
    NotSimpleRestricted(String),
    #[error("Weyl element is not fixed by the automorphism")]
    NotThetaFixed,
    #[error("zero is not allowed here: {0}")]
    ZeroInput(&'static str),
    #[error("{d} is a square at place {place}; the extension is not quadratic")]
    SquareDiscriminant { d: String, place: String },
    #[error("characteristic 2 is not supported: 1/2 is undefined")]
    CharacteristicTwo,
    #[error("invalid descent datum: {0}")]
    InvalidDescent(String),
    #[error("invalid a-data: {0}")]
    InvalidAData(String),
    #[error("invalid realization: {0}")]
    InvalidRealization(String),
    #[error("missing sign value for restricted root {0}")]
    MissingSign(String),
    #[error("unknown factor variant {0}")]
    UnknownVariant(String),
    #[error("matrix error: {0}")]
    Matrix(String),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("parse error in field `{field}`: {message}")]
    Parse { field: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

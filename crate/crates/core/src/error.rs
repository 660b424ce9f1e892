use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("gcd of zero polynomials")]
    GcdOfZero,

    #[error("exponent vector must have at least one entry")]
    EmptyExponentVector,

    #[error("generator index {index} out of range for {n} generators")]
    GeneratorOutOfRange { index: usize, n: usize },

    #[error("invalid parameters H({r},{n},{s}): need r >= 1, s >= 1, n >= 2")]
    InvalidParams { r: u64, n: u64, s: u64 },

    #[error("invalid search bounds: {0}")]
    InvalidBounds(String),

    #[error("search bounds overflow: {0}")]
    BoundOverflow(String),

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),

    #[error("serialization failed: {0}")]
    Serialization(String),
}

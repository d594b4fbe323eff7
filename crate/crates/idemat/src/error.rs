use thiserror::Error;

/// Every fallible operation in this crate returns one of these.
///
/// The split matters to callers: `Parse` means malformed input text,
/// everything else is a domain error on well-formed data.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("singular matrix: {0}")]
    SingularMatrix(String),

    #[error("matrix is not idempotent: {0}")]
    NotIdempotent(String),

    #[error("constraint violated: {0}")]
    ConstraintViolated(String),

    #[error("subspaces are not complementary: {0}")]
    NotComplementary(String),

    #[error("elements are not comparable: {0}")]
    NotComparable(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

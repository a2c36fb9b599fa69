use thiserror::Error;

/// Errors raised by the library. Mathematical negatives (a Levi that is not
/// flat, a partition failing a shape test) are values, never errors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("invalid Lie type: {0}")]
    InvalidType(String),
    #[error("invalid Levi specification: {0}")]
    InvalidLevi(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("parse error in {input:?} at column {column}: {message}")]
    Parse { input: String, column: usize, message: String },
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("quotient is not finite-dimensional")]
    InfiniteQuotient,
    #[error("base point is not generic: stabilizer has order {found}, expected {expected}")]
    NonGenericBase { expected: usize, found: usize },
    #[error("element is not invariant under the Weyl group of {0}")]
    NotInvariant(String),
    #[error("ambient types differ: {0} vs {1}")]
    AmbientMismatch(String, String),
    #[error("collapse impossible: {0}")]
    Collapse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(input: &str, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { input: input.to_string(), column, message: message.into() }
}

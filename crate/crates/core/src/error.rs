use thiserror::Error;

/// Errors produced by every radiuskit operation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A computation would exceed its configured resource budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A cover sequence violates its structural invariants; `index` is 1-based.
    #[error("structure error at set {index}: {message}")]
    Structure { index: usize, message: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid witness: {0}")]
    Witness(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid_param(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

use thiserror::Error;

/// Errors raised by the exact-arithmetic pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero is not allowed here")]
    Zero,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different quadratic fields: {0} and {1}")]
    MixedFields(String, String),
    #[error("value is not real: {0}")]
    NotReal(String),
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degree {0} is out of scope (only degree 1 and 2 are supported)")]
    OutOfScope(usize),
    #[error("resource guard tripped: {0}")]
    Resource(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("internal verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

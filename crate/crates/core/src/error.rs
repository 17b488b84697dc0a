use thiserror::Error;

/// Errors raised by the algebra and solving routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("zero polynomial has no leading data")]
    ZeroPolynomial,
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("degenerate substitution chain in triangular set {set}: {detail}")]
    DegenerateChain { set: usize, detail: String },
    #[error("modular computation gave up after {rounds} rounds ({primes} primes): {reason}")]
    RoundsExceeded {
        rounds: usize,
        primes: usize,
        reason: String,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

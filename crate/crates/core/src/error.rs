use thiserror::Error;

/// Errors raised by region construction, the oracle and the rate simulator.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DofError {
    #[error("rational arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("cannot parse rational from {0:?}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
}

impl DofError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        DofError::Domain(msg.into())
    }
}

pub type Result<T, E = DofError> = std::result::Result<T, E>;

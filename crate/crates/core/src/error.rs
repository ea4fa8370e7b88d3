use thiserror::Error;

/// Errors raised by the solver and its diagnostics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected} samples, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numerical blow-up (non-finite field) after step {step}")]
    NumericalBlowup { step: u64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

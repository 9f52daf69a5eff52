use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// The input lies outside the domain of the operation (not Hermitian,
    /// not unitary, negative argument, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A validated construction (POVM, state, SIC) failed its invariant check.
    #[error("construction error: {reason} (worst deviation {deviation:.3e})")]
    Construction { reason: String, deviation: f64 },

    /// An iterative routine hit its cap without converging.
    #[error("numerical error: {reason}")]
    Numerical {
        reason: String,
        best_iterate: Vec<Complex64>,
    },

    #[error("size limit exceeded: {0}")]
    Size(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

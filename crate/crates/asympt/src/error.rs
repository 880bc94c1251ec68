//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Binary series operation on operands of different truncation orders.
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    /// `exp` of a series whose constant term is nonzero, `log` of a series
    /// whose constant term is not one, and similar structural violations.
    #[error("series domain error: {0}")]
    SeriesDomain(String),

    /// Invalid distribution or phi parameters (p outside (0,1), beta <= 0, ...).
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Function evaluated outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Operation not defined for this combination of inputs.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An oracle failed to reach the requested tolerance within its
    /// iteration cap. Carries the best value obtained so far.
    #[error(
        "oracle failed to converge after {terms} terms (best {best}, tail bound {tail_bound})"
    )]
    Convergence {
        best: f64,
        terms: usize,
        tail_bound: f64,
    },

    /// Too few usable data points for a fit.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// Malformed spec string (family, phi, or grid), with byte position.
    #[error("parse error at position {position}: {message}")]
    Parse { message: String, position: usize },
}

impl Error {
    /// Process exit code for the CLI: 2 = bad arguments, 3 = unsupported
    /// combination, 4 = numeric convergence failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Unsupported(_) => 3,
            Error::Convergence { .. } => 4,
            _ => 2,
        }
    }
}

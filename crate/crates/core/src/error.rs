//! Error types shared across the crate.

use thiserror::Error;

/// Errors arising from invalid parameter domains or numerical breakdown.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    /// A parameter lies outside the mathematical domain of the requested
    /// quantity (for example a moment that diverges at the requested order).
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative scheme failed to converge within its budget.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// A matrix operation hit a singular or non-positive-definite input.
    #[error("linear algebra error: {0}")]
    Linalg(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, CoreError>;

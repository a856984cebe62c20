//! Error type shared by spectrum generation, special functions, and checks.

use thiserror::Error;

/// Errors produced by spectrum generators, special-function evaluation, and
/// inequality or conjecture checks.
#[derive(Debug, Error)]
pub enum Error {
    /// A domain or operation parameter is outside its documented range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Certified enumeration could not reach the requested eigenvalue count
    /// within the refinement budget.
    #[error("enumeration budget exhausted: {0}")]
    Budget(String),

    /// A numeric routine left its reliable regime (non-convergence,
    /// overflow/underflow of a scaled term, or loss of the precision target).
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// The requested check is not defined for the given domain or problem.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Serialization or deserialization of a spectrum or report failed.
    #[error("serialization: {0}")]
    Serialization(#[from] serde_json::Error),
}

//! Error type shared by all modules.

use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the requested
    /// quantity (e.g. an exponent inside the forbidden gap of `g_omega`).
    #[error("domain error: {0}")]
    Domain(String),

    /// An argument lies outside the admissible range of a well-defined
    /// quantity (e.g. an angle beyond the cone half-opening).
    #[error("range error: {0}")]
    Range(String),

    /// A bracketing or iterative solve failed to converge.
    #[error("convergence error: {0}")]
    Convergence(String),

    /// Vector dimensions are inconsistent or below the minimum.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// Evaluation at a removable singularity with data that does not
    /// satisfy the limit hypothesis.
    #[error("singularity error: {0}")]
    Singularity(String),

    /// A user-supplied field produced a non-finite value.
    #[error("evaluation error: {0}")]
    Evaluation(String),

    /// A constructive search exhausted its budget; the requested object
    /// exists mathematically but not within f64 margins.
    #[error("infeasible: {0}")]
    Infeasible(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }
    pub(crate) fn convergence(msg: impl Into<String>) -> Self {
        Error::Convergence(msg.into())
    }
    pub(crate) fn dimension(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }
}

use thiserror::Error;

/// Failure modes shared by every module of the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not integrable: {0}")]
    NonIntegrable(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("discretization error: {0}")]
    DiscretizationError(String),
    #[error("convergence error: {0}")]
    ConvergenceError(String),
    #[error("degenerate test function: {0}")]
    DegenerateFunction(String),
}

impl Error {
    /// Usage-type errors map to exit code 2, numerical failures to 1.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::InvalidInput(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by kernel construction, assembly, solution and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// Input violated a documented precondition.
    #[error("invalid input: {0}")]
    Validation(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A construction is not available for the given kernel or profile.
    #[error("unsupported construction: {0}")]
    Unsupported(String),

    /// Adaptive quadrature (or another iterative routine) did not reach its tolerance.
    #[error("numeric failure in {context}: achieved error estimate {estimate:e}")]
    NumericFailure { context: String, estimate: f64 },

    /// Cholesky factorization failed, also after the diagonal jitter retry.
    #[error("matrix is not positive definite (pivot {pivot:e} at row {row}, jitter {jitter:e}); the averaging functionals are likely dependent")]
    NotPositiveDefinite { row: usize, pivot: f64, jitter: f64 },

    #[error("unknown kernel name `{0}`")]
    UnknownKernel(String),

    #[error("{path}: row {row}: {message}")]
    Parse {
        path: PathBuf,
        row: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    /// True for errors that stem from bad user input rather than numerics.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Validation(_)
                | Error::DimensionMismatch { .. }
                | Error::Unsupported(_)
                | Error::UnknownKernel(_)
                | Error::Parse { .. }
                | Error::Io(_)
                | Error::Csv(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

//! Crate-wide error type.

use crate::specnorm::NormProfile;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Grid refinement hit the point cap before the requested tolerance was
    /// met. The best profile computed so far is carried along.
    #[error("accuracy not reached: best value {} at grid {}, residual {}",
            best.value, best.grid_size, best.estimated_error)]
    AccuracyNotReached { best: NormProfile },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("numeric overflow: {0}")]
    NumericOverflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 for usage-level errors, 3 for
    /// resource limits, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_) | Error::Unsupported(_) => 2,
            Error::ResourceLimit(_) => 3,
            _ => 1,
        }
    }
}

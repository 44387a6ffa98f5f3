use thiserror::Error;

/// Failure kinds shared by every module of the crate.
///
/// `Identity` is reserved for violations of statements that are theorems
/// (a failure means a bug); `Contract` is misuse by the caller.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("unsupported algebra: {0}")]
    Unsupported(String),
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("graduation error: {0}")]
    Graduation(String),
    #[error("identity failed: {0}")]
    Identity(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

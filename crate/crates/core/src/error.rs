use thiserror::Error;

/// Errors produced by field construction, code construction, analysis and
/// certification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Division or inversion by zero, or division by the zero polynomial.
    #[error("domain error: {0}")]
    Domain(String),

    /// An enumeration would exceed its configured budget.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    /// The input does not satisfy the operation's precondition
    /// (for example a code that is not AMDS handed to an AMDS-only routine).
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A weight distribution that cannot belong to a linear code.
    #[error("inconsistent input: {0}")]
    Inconsistency(String),

    /// A self-check failed. This always indicates a bug in the arithmetic.
    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => { $crate::error::Error::InvalidArgument(format!($($arg)*)) };
}

macro_rules! internal {
    ($($arg:tt)*) => { $crate::error::Error::Internal(format!($($arg)*)) };
}

pub(crate) use internal;
pub(crate) use invalid;

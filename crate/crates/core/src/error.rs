use thiserror::Error;

/// Errors produced by the entanglement engines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("singular input: {0}")]
    SingularInput(String),

    #[error("numeric domain error: {0}")]
    NumericDomain(String),

    #[error("singular limit: {0}")]
    SingularLimit(String),

    #[error("spectral domain error: {0}")]
    SpectralDomain(String),

    #[error("quadrature did not converge: {0}")]
    Convergence(String),

    #[error("truncation insufficient: {0}")]
    TruncationInsufficient(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

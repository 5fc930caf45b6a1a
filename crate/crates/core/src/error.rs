use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("index error: {0}")]
    Index(String),
    #[error("dimension error: expected {expected} parameters, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("singular value: {0}")]
    Singular(String),
    #[error("no convergence: {what} (achieved residual {residual:e})")]
    Convergence { what: String, residual: f64 },
    #[error("size error: {0}")]
    Size(String),
    #[error("integrand not integrable: {0}")]
    Integrability(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn index(msg: impl Into<String>) -> Error {
    Error::Index(msg.into())
}

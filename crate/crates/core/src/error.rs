use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

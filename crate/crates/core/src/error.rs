use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("no root of the rigidity equation in (0, 1)")]
    NoThreshold,
    #[error("degenerate point, index undefined at t = {0}")]
    DegenerateInstant(String),
    #[error("instant set does not cover t = {t}; computed down to {t_min}")]
    InsufficientCoverage { t: String, t_min: String },
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("pattern must not be empty")]
    EmptyPattern,
    #[error("pattern length {m} exceeds the limit of {max} for this operation")]
    PatternTooLong { m: usize, max: usize },
    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),
    #[error("unknown engine `{0}`")]
    UnknownEngine(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

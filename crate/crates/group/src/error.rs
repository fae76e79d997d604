use lk_ring::RingError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("ill-formed integral model: {0}")]
    IllFormed(String),
    #[error("no sigma-conjugacy class member with sigma-fixed norm for class {0}, and the norm equation has no solution")]
    NoFixedNormMember(u32),
    #[error("function is not constant on conjugacy classes (class {0})")]
    NotClassFunction(u32),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

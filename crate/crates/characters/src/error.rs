use lk_group::GroupError;
use lk_ring::RingError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("invalid argument: {0}")]
    Invalid(String),
    /// Two computations that must agree did not; indicates a bug.
    #[error("internal mismatch: {0}")]
    Mismatch(String),
}

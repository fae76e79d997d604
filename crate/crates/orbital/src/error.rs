use lk_group::GroupError;
use lk_padic::PadicError;
use lk_ring::RingError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OrbitalError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("pair mismatch: {0}")]
    Mismatch(String),
}

use lk_ring::RingError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PadicError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("precision insufficient: {0}")]
    Precision(String),
    #[error("chain of F-images does not stabilize: {0}")]
    NonStabilizing(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

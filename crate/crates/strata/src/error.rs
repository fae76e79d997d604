use lk_characters::CharError;
use lk_ring::RingError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StrataError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Characters(#[from] CharError),
    #[error("invalid poset: {0}")]
    Invalid(String),
    #[error("missing intermediate stratum between {small} and {big}")]
    Cover { small: String, big: String },
    #[error("condition (*) has not been verified for this poset")]
    StarNotVerified,
    #[error("unknown stratum {0}")]
    UnknownStratum(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
}

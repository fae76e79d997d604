use lk_characters::CharError;
use lk_group::GroupError;
use lk_padic::PadicError;
use lk_ring::RingError;
use lk_strata::StrataError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TestFnError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Characters(#[from] CharError),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Strata(#[from] StrataError),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
}

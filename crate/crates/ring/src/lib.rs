//! Arithmetic in Galois rings `GR(p^m, r) = Z_{p^r} / p^m`.
//!
//! [`GaloisRing`] is the exact coefficient-vector model used by the p-adic
//! code at arbitrary working precision. [`FiniteRing`] is a table-driven copy
//! of a small Galois ring, used wherever whole matrix groups are enumerated.
//!
//! Range caps: `p < 2^32`, `p^m <= 2^62`, `1 <= r <= 32`. Table rings are
//! limited to at most 1024 elements.

mod error;
mod finite;
mod galois;
pub mod fmat;
pub mod limits;
mod poly;

pub use error::RingError;
pub use finite::FiniteRing;
pub use galois::{make_ring, GaloisRing, GrElem, RingParams};

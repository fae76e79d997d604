//! Exact arithmetic shared by every other crate in the workspace.
//!
//! Values are [`Q`] (arbitrary precision rationals). Serialization always
//! uses the `"num/den"` string form so that no float ever appears in a
//! report.

pub mod complex;
pub mod linalg;
pub mod modp;
pub mod quad;
pub mod rational;

pub use linalg::{Kernel, Rref};
pub use quad::QuadExt;
pub use rational::{fmt_q, parse_q, q, q_frac, Q};

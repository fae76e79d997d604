//! Matrices over `Q_{p^r}` known modulo `p^N`, as `p^{-d}` times an
//! integral matrix over `GR(p^N, r)`.
//!
//! Every valuation-sensitive operation checks that the data it depends on is
//! determined at the working precision and fails with
//! [`PadicError::Precision`] otherwise.

mod elliptic;
mod error;
mod height;
mod matrix;
mod newton;
mod snf;

pub use elliptic::{has_root, is_elliptic, EllipticMethod, EllipticReport};
pub use error::PadicError;
pub use height::{etale_split, height_of_delta, norm_polygon, EtaleSplit};
pub use matrix::{default_precision, Entry, PadicInput, PadicMatrix};
pub use newton::{charpoly, newton_polygon, NewtonPolygon, Segment};
pub use snf::{double_coset_membership, smith_normal_form};

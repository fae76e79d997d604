//! Stratified special fibres reduced to their combinatorics.
//!
//! A [`StrataPoset`] is a finite set of strata with codimensions and the
//! closure order. To each stratum `Z` of codimension `c` we attach `W_Z`,
//! the kernel of
//! `⊕_{Z ⊂ Z', c(Z') = c−1} W_{Z'} → ⊕_{Z ⊂ Z'', c(Z'') = c−2} W_{Z''}`,
//! starting from `W_Z = Q` in codimension 1. A formal ambient stratum of
//! codimension 0 with `W = Q` contains everything, which handles the
//! codimension-2 case uniformly.

mod equivariant;
mod error;
mod poset;
mod star;
mod wspaces;

pub use equivariant::{nearby_cycle_dims_check, ss_trace_stalk, EquivariantStrata, NearbyRow, NearbyReport, SsTraceStalk};
pub use error::StrataError;
pub use poset::{build_summand_poset, StrataPoset, StratumInput, SummandData, AMBIENT};
pub use star::{check_star, stalk_dims, StalkContribution, StalkReport, StarReport, StratumExactness};
pub use wspaces::{chain_model_dim, compute_w_spaces, WAssignment, WSpace};

//! Orbital integrals `O_γ(f)` on `GL_n(Q_p)` and twisted orbital integrals
//! `TO_{δσ}(φ)` on `GL_n(Q_{p^r})` for bi-`K`-invariant (or level-`m`)
//! functions, by enumerating lattices.

mod error;
mod integral;
mod lattice;
mod support;

pub use error::OrbitalError;
pub use integral::{
    depth_sums, double_coset_volume, match_report, orbital_integral, twisted_orbital_integral, DepthSum, MatchReport,
    MatchRow, Mode, OrbitalReport,
};
pub use lattice::{enumerate_cosets, hnf_of, LatticeRep};
pub use support::{unit_transfer, volume_closed_form, ResidueSet, SupportComponent, SupportSpec};

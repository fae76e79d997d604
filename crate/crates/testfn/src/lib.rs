//! Test functions on `GL_n(Q_{p^r})` built from Hecke functions `h` on
//! `GL_n(Z_p)`: the value `φ_h(δ₀) = tr(h × Nδ₂ | I_k)`, its comparison
//! with the semisimple trace on the nearby-cycle stalk model, the scalar
//! `p^{(n−1)r/2} tr^{ss}(Φ_p^r | σ_π)` from cuspidal-support data, and the
//! `GL_n × GL_1` wrapper.

mod context;
mod error;
mod phi;
mod route;
mod support;
mod wrapper;

pub use context::{h_vee, TraceContext};
pub use error::TestFnError;
pub use lk_characters::{HeckeFunction, HeckeInput, HeckeSpec};
pub use lk_exact::QuadExt;
pub use phi::{phi_h, PhiValue};
pub use route::{ss_trace_consistency, ConsistencyReport};
pub use support::{ss_trace_scalar, CuspidalSupport, SupportSegment};
pub use wrapper::{gu_spectral_check, gu_wrapper, CentralCharacter, GuCheck, GuWrapper, ProductRep};

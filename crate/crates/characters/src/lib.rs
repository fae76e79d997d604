//! Virtual characters of `GL_k(Z/p^m)` built from parabolic inductions:
//! the Steinberg module as functions on complete flags of direct summands,
//! the exactness of its transition complex, the virtual representations
//! `I_k^0` and `I_k`, and the trace identities relating them.

mod complex;
mod error;
mod group;
mod hecke;
mod level;
mod ops;
mod steinberg;
pub mod summands;

pub use complex::{transition_complex_exactness, ComplexReport, TransitionComplex};
pub use error::CharError;
pub use group::{gl_order, FiniteLinearGroup, Points, SAMPLE_POINTS};
pub use hecke::{matrix_from_rows, matrix_to_rows, HeckeFunction, HeckeInput, HeckeSpec, MassEntry};
pub use level::Level;
pub use ops::{
    borel_order, eqrepr_check, ik0, ik_trace, induced_trivial, induction_trace_identity, steinberg_flag_model,
    steinberg_virtual, subquotient_restriction, ClassValue, EqReprPoint, EqReprReport, ParabolicShape, TraceIdentity,
    VirtualClassFunction,
};
pub use steinberg::{fixed_flags, steinberg_alternating, FlagModel};

//! Finite groups `G_M(R)/G_{M,I}(R)` for integral models of `GL_n` over the
//! Galois ring `R = GR(p^m, r)`, their conjugacy and sigma-conjugacy
//! classes, the class norm map and the finite base-change identity for
//! idempotent convolutions.

mod classes;
mod convolution;
mod error;
mod norm;
mod quotient;
mod spec;

pub use classes::{certify_centralizers, class_tables, conjugacy_classes, sigma_classes, ClassEntry, ClassKind, ClassTable};
pub use convolution::{class_values, ConvolutionContext, ConvolutionReport, ConvolutionValue};
pub use error::GroupError;
pub use norm::{class_norm_map, solve_norm_equation, NormCertificate, NormClassEntry, NormMap};
pub use quotient::{build_quotient, general_linear, QuotientGroup};
pub use spec::{IdealSpec, IntegralModelSpec, OrderSpec};

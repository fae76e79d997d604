//! `f_{p,h}(g, x) = (f_{n,p} ∗ h)((g^{-1})^t)` when `v_p(x) = −r`, else 0,
//! on `GL_n(Q_p) × Q_p^×`, and its trace on products `π⁰ ⊗ χ`.

use crate::context::TraceContext;
use crate::error::TestFnError;
use crate::support::{ss_trace_scalar, CuspidalSupport};
use lk_characters::{HeckeFunction, HeckeInput};
use lk_exact::rational::serde_q;
use lk_exact::{QuadExt, Q};
use lk_ring::fmat;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize)]
pub struct GuWrapper {
    pub n: usize,
    pub p: u64,
    pub m: u32,
    pub r: u32,
    /// `h^∨` as level-`m` masses: the `GL_n` part of the wrapper is
    /// `f_{n,p} ∗ h` precomposed with `g ↦ (g^{-1})^t`.
    pub gl_n_part: HeckeInput,
    /// The `GL_1` factor is the normalized indicator of `p^{gl1_valuation} Z_p^×`.
    pub gl1_valuation: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CentralCharacter {
    Unramified { value: QuadExt },
    Ramified,
}

/// `π_p = (χ₀∘det ⊗ π_j) ⊗ χ` with `χ₀` unramified of value `twist` at `p`,
/// `π_j` the `j`-th subquotient of the unramified principal series of
/// `GL_n` (`j = 0` is the trivial representation) and `χ` a character of
/// `Q_p^×`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductRep {
    pub twist: QuadExt,
    #[serde(default)]
    pub subquotient: usize,
    pub central: CentralCharacter,
}

#[derive(Clone, Debug, Serialize)]
pub struct GuCheck {
    /// `tr(f_{n,p} ∗ h | π⁰^∨) · tr(e_{p^{-r}Z_p^×} | χ)`.
    pub lhs: QuadExt,
    /// `p^{(n−1)r/2} tr(h̃ | π_p) tr^{ss}(Φ_p^r | r∘σ_{π_p})`.
    pub rhs: QuadExt,
    pub equal: bool,
    /// `tr(h | π⁰^∨)` at level `m`.
    #[serde(with = "serde_q")]
    pub trace_dual: Q,
    /// `tr(h^∨ | π⁰)` at level `m`.
    #[serde(with = "serde_q")]
    pub trace_vee: Q,
}

pub fn gu_wrapper(ctx: &TraceContext, h: &HeckeFunction, r: u32) -> GuWrapper {
    GuWrapper {
        n: ctx.n(),
        p: ctx.p(),
        m: ctx.m(),
        r,
        gl_n_part: ctx.h_vee(h).to_input(ctx.group()),
        gl1_valuation: -(r as i64),
    }
}

impl ProductRep {
    /// Cuspidal support of `χ₀∘det ⊗ π_j`, the same for every `j`.
    pub fn support(&self, n: usize, p: u64) -> CuspidalSupport {
        let mut t = self.twist.clone();
        t.p = p as i64;
        CuspidalSupport::trivial(n, p).twist(&t)
    }
}

/// Both sides of the factorized trace identity for the wrapper on
/// `π_p = π⁰ ⊗ χ`.
pub fn gu_spectral_check(ctx: &TraceContext, h: &HeckeFunction, r: u32, pi: &ProductRep) -> Result<GuCheck, TestFnError> {
    let n = ctx.n();
    let p = ctx.p() as i64;
    if pi.subquotient >= n {
        return Err(TestFnError::Invalid(format!("subquotient index {} must be below n = {n}", pi.subquotient)));
    }
    if pi.twist.is_zero() {
        return Err(TestFnError::Invalid("twist value must be nonzero".into()));
    }
    let group = ctx.group();
    let level = ctx.level();
    let ring = level.ring();
    let chi = |g: &[u32]| level.subquotient(pi.subquotient, g);
    let trace_dual = h.masses().iter().fold(Q::zero(), |acc, (&x, w)| {
        acc + w * chi(&fmat::inv(ring, group.rep(x)).expect("units"))
    });
    let trace_vee = ctx.h_vee(h).masses().iter().fold(Q::zero(), |acc, (&x, w)| acc + w * chi(group.rep(x)));
    let support = pi.support(n, ctx.p());
    let (gl1, z_inv) = match &pi.central {
        CentralCharacter::Unramified { value } => {
            let mut z = value.clone();
            z.p = p;
            let zi = z.inv().ok_or_else(|| TestFnError::Invalid("central value must be nonzero".into()))?;
            (zi.pow(r as i64).unwrap(), Some(zi))
        }
        CentralCharacter::Ramified => (QuadExt::zero(p), None),
    };
    let lhs = &ss_trace_scalar(&support.dual(), n, r)?.scale(&trace_dual) * &gl1;
    let rhs = match z_inv {
        None => QuadExt::zero(p),
        Some(zi) => {
            // r(g, x) = (g^{-1})^t x^{-1}: Frobenius eigenvalues c_i^{-1} z^{-1}
            let twisted = support.dual().twist(&zi);
            &QuadExt::sqrt_p_pow(p, (n as i64 - 1) * r as i64) * &twisted.frobenius_trace(r).scale(&trace_vee)
        }
    };
    let equal = lhs == rhs;
    Ok(GuCheck { lhs, rhs, equal, trace_dual, trace_vee })
}

use crate::context::TraceContext;
use crate::error::TestFnError;
use lk_characters::{ik_trace, matrix_to_rows, HeckeFunction};
use lk_exact::rational::serde_q;
use lk_exact::Q;
use lk_group::NormCertificate;
use lk_padic::{double_coset_membership, etale_split, height_of_delta, smith_normal_form, PadicMatrix};
use lk_ring::fmat::Mat;
use num_traits::Zero;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct PhiValue {
    #[serde(with = "serde_q")]
    pub value: Q,
    pub elementary_divisors: Vec<i64>,
    pub in_support: bool,
    pub k: Option<usize>,
    /// `δ₂′` mod `p^m`.
    pub delta2: Option<Vec<Vec<Vec<u64>>>>,
    /// The `Nδ₂` class in `GL_{n−k}(Z/p^m)`, by its least representative.
    pub n_delta2: Option<Vec<Vec<u64>>>,
    pub norm_certificate: Option<NormCertificate>,
}

/// Integral, correctly shaped `δ₀` with enough precision for level `m`.
pub(crate) fn prepare(ctx: &TraceContext, d: &PadicMatrix, r: u32) -> Result<PadicMatrix, TestFnError> {
    if d.n() != ctx.n() || d.p() != ctx.p() || d.r() != r as usize {
        return Err(TestFnError::Invalid(format!(
            "δ₀ must be {n} x {n} over Q_{{{p}^{r}}}",
            n = ctx.n(),
            p = ctx.p()
        )));
    }
    d.require_precision(ctx.m() + 1, "phi_h")?;
    Ok(d.clone())
}

/// `δ₂′` reduced mod `p^m` as an element id of `GL_{n−k}(GR(p^m, r))`.
pub(crate) fn delta2_id(ctx: &TraceContext, q: &lk_group::QuotientGroup, d2: &PadicMatrix) -> Result<u32, TestFnError> {
    let ring = q.ring();
    let mat: Mat = d2
        .entries()
        .iter()
        .map(|e| ring.index(&d2.ring().truncate(e, ctx.m())))
        .collect();
    q.id_of(&mat).ok_or_else(|| TestFnError::Mismatch("δ₂′ is not invertible mod p^m".into()))
}

impl TraceContext {
    /// `φ_h(δ₀)`.
    pub fn phi(&self, h: &HeckeFunction, d: &PadicMatrix, r: u32) -> Result<PhiValue, TestFnError> {
        let d = prepare(self, d, r)?;
        let divisors = smith_normal_form(&d)?;
        if !double_coset_membership(&d)? {
            return Ok(PhiValue {
                value: Q::zero(),
                elementary_divisors: divisors,
                in_support: false,
                k: None,
                delta2: None,
                n_delta2: None,
                norm_certificate: None,
            });
        }
        let d = d.integral_part()?;
        let n = self.n();
        let k = height_of_delta(&d)?;
        let split = etale_split(&d)?;
        if split.k != k {
            return Err(TestFnError::Mismatch(format!("étale split has k = {} but the height is {k}", split.k)));
        }
        let (g2, cert, d2rows) = if k < n {
            let nd = self.norm_data(n - k, r as usize)?;
            let id = delta2_id(self, &nd.group, &split.delta2)?;
            let s = nd.sig.class_of(id).expect("sigma classes cover the group");
            let c = nd.map.image(s);
            let rep = nd.conj.classes[c as usize].rep;
            (self.to_base(&nd.group, rep)?, Some(nd.map.certificate.clone()), Some(nd.group.matrix_json(id)))
        } else {
            (Vec::new(), None, Some(Vec::new()))
        };
        let value = ik_trace(self.level(), n, k, r, h, &g2)?;
        Ok(PhiValue {
            value,
            elementary_divisors: divisors,
            in_support: true,
            k: Some(k),
            delta2: d2rows,
            n_delta2: Some(matrix_to_rows(n - k, &g2)),
            norm_certificate: cert,
        })
    }
}

/// One-shot `φ_h(δ₀)` on a fresh context.
pub fn phi_h(h: &HeckeFunction, d: &PadicMatrix, r: u32) -> Result<PhiValue, TestFnError> {
    TraceContext::new(h.n(), h.p(), h.m())?.phi(h, d, r)
}

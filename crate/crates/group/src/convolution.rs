//! Finite-level form of the base-change identity for idempotent
//! convolutions.
//!
//! Two levels `I' ⊆ I` of the same order are used. For a class function `f`
//! on the fine fixed group `Q'_K`, put `φ(x) = f(N'[x])` on `Q'_L`, with
//! `N'` the class norm map. Then, for `δ ∈ Q_L`:
//!
//! * lhs is the average of `φ` over the coset `δ G_{M,I}`, i.e. over the
//!   fibre of `Q'_L → Q_L` above `δ`;
//! * rhs is the average of `f` over the preimage in `Q'_K` of the set of
//!   elements of `Q_K` that are `Q_L`-conjugate to `N δ`.
//!
//! With `I' = I` the lhs is `f(N'[δ])` and the rhs averages `f` over the
//! `Q_L`-conjugacy orbit of the plain norm inside `Q_K`.

use crate::classes::{conjugacy_classes, sigma_classes, ClassTable};
use crate::error::GroupError;
use crate::norm::{class_norm_map, NormMap};
use crate::quotient::QuotientGroup;
use lk_exact::Q;
use num_traits::Zero;
use serde::Serialize;

pub struct ConvolutionContext<'a> {
    fine: &'a QuotientGroup,
    coarse: &'a QuotientGroup,
    fine_conj: ClassTable,
    fine_sig: ClassTable,
    fine_norm: NormMap,
    coarse_conj_all: ClassTable,
    fibres: Vec<Vec<u32>>,
    fine_fixed_proj: Vec<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvolutionValue {
    #[serde(with = "lk_exact::rational::serde_q")]
    pub lhs: Q,
    #[serde(with = "lk_exact::rational::serde_q")]
    pub rhs: Q,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvolutionReport {
    pub deltas: usize,
    pub basis_functions: usize,
    pub checks: usize,
    pub failures: Vec<(u32, u32)>,
}

impl ConvolutionReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

impl<'a> ConvolutionContext<'a> {
    pub fn new(fine: &'a QuotientGroup, coarse: &'a QuotientGroup) -> Result<Self, GroupError> {
        if fine.spec().order != coarse.spec().order || fine.ring() != coarse.ring() {
            return Err(GroupError::Invalid("levels must share order and ring".into()));
        }
        let proj: Vec<u32> = (0..fine.size() as u32)
            .map(|x| fine.project(x, coarse).ok_or_else(|| GroupError::Invalid("not a common unit group".into())))
            .collect::<Result<_, _>>()?;
        if coarse.size() * coarse.level_size() != fine.size() * fine.level_size()
            || fine.size() % coarse.size() != 0
        {
            return Err(GroupError::Invalid("fine level is not contained in the coarse level".into()));
        }
        let mut fibres = vec![Vec::new(); coarse.size()];
        for (x, &d) in proj.iter().enumerate() {
            fibres[d as usize].push(x as u32);
        }
        let fine_fixed = fine.sigma_fixed();
        let fine_conj = conjugacy_classes(fine, &fine_fixed);
        let fine_sig = sigma_classes(fine);
        let fine_norm = class_norm_map(fine, &fine_conj, &fine_sig)?;
        let all: Vec<u32> = (0..coarse.size() as u32).collect();
        let coarse_conj_all = conjugacy_classes(coarse, &all);
        let fine_fixed_proj = fine_fixed.iter().map(|&x| (x, proj[x as usize])).collect();
        Ok(ConvolutionContext { fine, coarse, fine_conj, fine_sig, fine_norm, coarse_conj_all, fibres, fine_fixed_proj })
    }

    /// Conjugacy classes of `Q'_K`, the domain of the class functions.
    pub fn classes(&self) -> &ClassTable {
        &self.fine_conj
    }

    pub fn norm_map(&self) -> &NormMap {
        &self.fine_norm
    }

    /// Hit counts per class of `Q'_K` for the two averages, with totals.
    fn distributions(&self, delta: u32) -> ((Vec<u64>, u64), (Vec<u64>, u64)) {
        let k = self.fine_conj.len();
        let mut lhs = vec![0u64; k];
        for &x in &self.fibres[delta as usize] {
            let c = self.fine_norm.image(self.fine_sig.class_of(x).unwrap());
            lhs[c as usize] += 1;
        }
        let target = self.coarse_conj_all.class_of(self.coarse.norm_element(delta)).unwrap();
        let mut rhs = vec![0u64; k];
        let mut total = 0;
        for &(x, d) in &self.fine_fixed_proj {
            if self.coarse.sigma(d) == d && self.coarse_conj_all.class_of(d) == Some(target) {
                rhs[self.fine_conj.class_of(x).unwrap() as usize] += 1;
                total += 1;
            }
        }
        let lt = self.fibres[delta as usize].len() as u64;
        ((lhs, lt), (rhs, total))
    }

    /// `f` is given by its values on the classes of `Q'_K`.
    pub fn check(&self, f: &[Q], delta: u32) -> Result<ConvolutionValue, GroupError> {
        if f.len() != self.fine_conj.len() {
            return Err(GroupError::Invalid(format!("expected {} class values", self.fine_conj.len())));
        }
        if delta as usize >= self.coarse.size() {
            return Err(GroupError::Invalid(format!("element {delta} out of range")));
        }
        let ((l, lt), (r, rt)) = self.distributions(delta);
        let avg = |counts: &[u64], t: u64| {
            if t == 0 {
                return Q::zero();
            }
            counts.iter().zip(f).fold(Q::zero(), |acc, (&c, v)| acc + v * Q::from_integer(c.into())) / Q::from_integer(t.into())
        };
        let lhs = avg(&l, lt);
        let rhs = avg(&r, rt);
        let equal = lhs == rhs;
        Ok(ConvolutionValue { lhs, rhs, equal })
    }

    /// Every coarse `δ` against every class indicator of `Q'_K`.
    pub fn exhaustive(&self) -> ConvolutionReport {
        let k = self.fine_conj.len();
        let mut failures = Vec::new();
        for d in 0..self.coarse.size() as u32 {
            let ((l, lt), (r, rt)) = self.distributions(d);
            for c in 0..k {
                // indicator of class c: l[c]/lt == r[c]/rt
                if rt == 0 || l[c] * rt != r[c] * lt {
                    failures.push((d, c as u32));
                }
            }
        }
        ConvolutionReport { deltas: self.coarse.size(), basis_functions: k, checks: self.coarse.size() * k, failures }
    }

    pub fn fine(&self) -> &QuotientGroup {
        self.fine
    }
}

/// Class values from a function on the elements of the sigma-fixed
/// subgroup (listed in id order); errors if it is not a class function.
pub fn class_values(table: &ClassTable, fixed: &[u32], values: &[Q]) -> Result<Vec<Q>, GroupError> {
    if fixed.len() != values.len() {
        return Err(GroupError::Invalid("one value per element expected".into()));
    }
    let mut out: Vec<Option<Q>> = vec![None; table.len()];
    for (&x, v) in fixed.iter().zip(values) {
        let c = table.class_of(x).ok_or_else(|| GroupError::Invalid(format!("element {x} not in the subgroup")))?;
        match &out[c as usize] {
            None => out[c as usize] = Some(v.clone()),
            Some(w) if w != v => return Err(GroupError::NotClassFunction(c)),
            _ => {}
        }
    }
    Ok(out.into_iter().map(|v| v.unwrap_or_default()).collect())
}

use crate::error::StrataError;
use crate::poset::StrataPoset;
use crate::wspaces::{chain_model_dim, WAssignment};
use lk_exact::complex::{check_exactness, ExactnessReport, SparseRows};
use serde::Serialize;
use std::collections::HashMap;

#[derive(Clone, Debug, Serialize)]
pub struct StratumExactness {
    pub id: String,
    pub codim: usize,
    pub complex: ExactnessReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct StarReport {
    pub strata: Vec<StratumExactness>,
    pub holds: bool,
    /// First stratum (in increasing codimension) whose complex fails, with
    /// the failing position.
    pub first_failure: Option<(String, usize)>,
}

/// For each `Z`, the complex
/// `0 → W_Z → ⊕_{Z ⊂ Z', c = c(Z)−1} W_{Z'} → ⋯ → ⊕_{c = 1} W_{Z'} → Q → 0`
/// with differentials the transition maps, checked for exactness.
pub fn check_star(poset: &StrataPoset, w: &WAssignment) -> StarReport {
    let mut strata = Vec::new();
    let mut first_failure = None;
    for z in poset.by_codim().into_iter().filter(|&e| e != 0) {
        let c = poset.codim(z);
        let terms: Vec<Vec<usize>> = (0..=c).map(|i| poset.containing(z, i)).collect();
        let offsets: Vec<HashMap<usize, usize>> = terms
            .iter()
            .map(|t| {
                let mut acc = 0;
                t.iter()
                    .map(|&e| {
                        let o = acc;
                        acc += w.dim(e);
                        (e, o)
                    })
                    .collect()
            })
            .collect();
        let dims: Vec<usize> = terms.iter().map(|t| t.iter().map(|&e| w.dim(e)).sum()).collect();
        let maps: Vec<SparseRows> = (1..=c)
            .map(|i| {
                let mut rows = Vec::with_capacity(dims[i]);
                for &e in &terms[i] {
                    let s = w.space(e);
                    for b in 0..s.dim() {
                        let mut row = Vec::new();
                        for (cover, coords) in s.blocks(b, w) {
                            let o = offsets[i - 1][&cover];
                            row.extend(coords.into_iter().map(|(j, x)| (o + j, x)));
                        }
                        rows.push(row);
                    }
                }
                rows
            })
            .collect();
        let complex = check_exactness(&dims, &maps);
        if first_failure.is_none() && !complex.holds() {
            first_failure = Some((poset.id(z).to_string(), complex.first_failure().unwrap_or(0)));
        }
        strata.push(StratumExactness { id: poset.id(z).to_string(), codim: c, complex });
    }
    StarReport { holds: first_failure.is_none(), strata, first_failure }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StalkContribution {
    pub id: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StalkReport {
    /// Stratum whose open part contains the point.
    pub point: String,
    pub k: usize,
    pub dim: usize,
    /// Every `R^k` stalk is pure of weight `2k` (Tate twist `(−k)`).
    pub weight: usize,
    pub contributions: Vec<StalkContribution>,
}

/// `dim (R^k)_x = Σ_{c(Z) = k, x ∈ Z} dim W_Z`, for `x` in the open part of
/// `point`. Each `dim W_Z` is recomputed from maximal chains and compared.
pub fn stalk_dims(
    poset: &StrataPoset,
    w: &WAssignment,
    star: &StarReport,
    point: &str,
    k: usize,
) -> Result<StalkReport, StrataError> {
    if !star.holds || star.strata.len() + 1 != poset.len() {
        return Err(StrataError::StarNotVerified);
    }
    let x = poset.elem(point)?;
    let mut contributions = Vec::new();
    for z in poset.containing(x, k) {
        let dim = w.dim(z);
        let chains = chain_model_dim(poset, z);
        if chains != dim {
            return Err(StrataError::Mismatch(format!("dim W_{} = {dim} but the chain model has {chains}", poset.id(z))));
        }
        contributions.push(StalkContribution { id: poset.id(z).to_string(), dim });
    }
    let dim = contributions.iter().map(|c| c.dim).sum();
    Ok(StalkReport { point: point.to_string(), k, dim, weight: 2 * k, contributions })
}

//! Exactness of finite chain complexes `0 → C_k → ⋯ → C_0 → 0` over Q.
//!
//! Each differential `d_i : C_i → C_{i−1}` is given by the images of the
//! basis vectors of `C_i`, as sparse rows over the basis of `C_{i−1}`.
//! `d∘d = 0` is checked exactly. Ranks are first computed modulo
//! [`crate::modp::ELL`]; these are lower bounds, and with `d∘d = 0` they
//! certify exactness as soon as `dim C_i = rank d_i + rank d_{i+1}` at every
//! position. Otherwise the ranks are recomputed exactly over Q.

use crate::linalg::Rref;
use crate::modp::rank_sparse_q;
use crate::rational::Q;
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;

pub type SparseRows = Vec<Vec<(usize, Q)>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMethod {
    ModEll,
    Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    /// `dim C_0, …, dim C_k`.
    pub dims: Vec<usize>,
    /// `rank d_1, …, rank d_k`.
    pub ranks: Vec<usize>,
    pub dd_zero: bool,
    /// Exactness at `C_0, …, C_k`.
    pub exact_at: Vec<bool>,
    pub rank_method: RankMethod,
}

impl ExactnessReport {
    pub fn holds(&self) -> bool {
        self.dd_zero && self.exact_at.iter().all(|&b| b)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.exact_at.iter().position(|&b| !b)
    }
}

fn apply(rows: &[Vec<(usize, Q)>], v: &[(usize, Q)]) -> BTreeMap<usize, Q> {
    let mut out: BTreeMap<usize, Q> = BTreeMap::new();
    for (i, x) in v {
        for (j, y) in &rows[*i] {
            *out.entry(*j).or_default() += x * y;
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}

fn rational_rank(rows: &[Vec<(usize, Q)>], ncols: usize) -> usize {
    let dense: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| {
            let mut d = vec![Q::zero(); ncols];
            for (j, x) in r {
                d[*j] += x;
            }
            d
        })
        .collect();
    Rref::new(&dense, ncols).rank()
}

/// `maps[i−1]` is `d_i` for `i = 1..=k`; `dims[i] = dim C_i`.
pub fn check_exactness(dims: &[usize], maps: &[SparseRows]) -> ExactnessReport {
    assert_eq!(maps.len() + 1, dims.len(), "one differential per positive degree");
    for (i, d) in maps.iter().enumerate() {
        assert_eq!(d.len(), dims[i + 1], "d_{} has the wrong number of rows", i + 1);
        assert!(d.iter().flatten().all(|(j, _)| *j < dims[i]), "d_{} leaves its target", i + 1);
    }
    let dd_zero = (1..maps.len()).all(|i| maps[i].iter().all(|row| apply(&maps[i - 1], row).is_empty()));
    let exact = |ranks: &[usize]| -> Vec<bool> {
        (0..dims.len())
            .map(|i| {
                let into = if i < ranks.len() { ranks[i] } else { 0 };
                let out = if i == 0 { 0 } else { ranks[i - 1] };
                dims[i] == into + out
            })
            .collect()
    };
    let modl: Option<Vec<usize>> = maps.iter().enumerate().map(|(i, d)| rank_sparse_q(d, dims[i])).collect();
    if let Some(ranks) = modl {
        let exact_at = exact(&ranks);
        if dd_zero && exact_at.iter().all(|&b| b) {
            return ExactnessReport { dims: dims.to_vec(), ranks, dd_zero, exact_at, rank_method: RankMethod::ModEll };
        }
    }
    let ranks: Vec<usize> = maps.iter().enumerate().map(|(i, d)| rational_rank(d, dims[i])).collect();
    let exact_at = exact(&ranks);
    ExactnessReport { dims: dims.to_vec(), ranks, dd_zero, exact_at, rank_method: RankMethod::Rational }
}

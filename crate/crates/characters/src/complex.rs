//! The complex `0 → W_V → ⊕_{rank k−1} W_H → ⋯ → ⊕_{rank 1} W_H → Q → 0`
//! for `V = (Z/p^m)^k`, with differentials the sums of the restriction maps
//! `f ↦ f(⋯ ⊂ H' ⊂ H)`.

use crate::error::CharError;
use crate::steinberg::FlagModel;
use crate::summands::SummandLattice;
use lk_exact::complex::{check_exactness, ExactnessReport, SparseRows};
use lk_ring::{limits, FiniteRing};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug, Serialize)]
pub struct ComplexReport {
    pub k: usize,
    pub p: u64,
    pub m: u32,
    /// Number of rank-`i` summands, `i = 0..=k`.
    pub summands: Vec<usize>,
    /// `dim W_H` for each rank (the same for every summand of that rank).
    pub w_dims: Vec<usize>,
    pub exactness: ExactnessReport,
}

impl ComplexReport {
    pub fn holds(&self) -> bool {
        self.exactness.holds()
    }
}

pub struct TransitionComplex {
    lattice: SummandLattice,
    models: Vec<Vec<FlagModel>>,
    offsets: Vec<Vec<usize>>,
}

impl TransitionComplex {
    pub fn new(k: usize, p: u64, m: u32) -> Result<TransitionComplex, CharError> {
        let ring = Arc::new(FiniteRing::new(p, m, 1)?);
        let lattice = SummandLattice::new(ring, k)?;
        let mut models = Vec::with_capacity(k + 1);
        let mut offsets = Vec::with_capacity(k + 1);
        let mut chains = 0u128;
        for i in 0..=k {
            let mut level = Vec::with_capacity(lattice.count(i));
            let mut off = Vec::with_capacity(lattice.count(i));
            let mut acc = 0;
            for h in 0..lattice.count(i) {
                let f = FlagModel::new(&lattice, i, h);
                chains += f.flag_count() as u128;
                limits::check("transition complex chains", chains)?;
                off.push(acc);
                acc += f.dim();
                level.push(f);
            }
            models.push(level);
            offsets.push(off);
        }
        Ok(TransitionComplex { lattice, models, offsets })
    }

    pub fn lattice(&self) -> &SummandLattice {
        &self.lattice
    }

    pub fn model(&self, rank: usize, h: usize) -> &FlagModel {
        &self.models[rank][h]
    }

    pub fn dim(&self, i: usize) -> usize {
        self.models[i].iter().map(FlagModel::dim).sum()
    }

    /// `d_i : C_i → C_{i−1}` in the free-flag coordinates of each block.
    pub fn differential(&self, i: usize) -> SparseRows {
        let mut rows = Vec::with_capacity(self.dim(i));
        for w in &self.models[i] {
            for b in 0..w.dim() {
                let mut img: BTreeMap<usize, lk_exact::Q> = BTreeMap::new();
                for (col, x) in w.kernel().vector(b) {
                    let flag = &w.flags()[col];
                    let (h2, rest) = if i >= 2 { (flag[i - 2], &flag[..i - 2]) } else { (0, &flag[..0]) };
                    let target = &self.models[i - 1][h2];
                    let c = target.flag_index(rest).expect("sub-chain is a flag of the smaller summand");
                    if let Some(b2) = target.coord_of(c) {
                        *img.entry(self.offsets[i - 1][h2] + b2).or_default() += x;
                    }
                }
                rows.push(img.into_iter().filter(|(_, x)| *x != lk_exact::q(0)).collect());
            }
        }
        rows
    }

    pub fn report(&self) -> ComplexReport {
        let k = self.lattice.k();
        let dims: Vec<usize> = (0..=k).map(|i| self.dim(i)).collect();
        let maps: Vec<SparseRows> = (1..=k).map(|i| self.differential(i)).collect();
        let ring = self.lattice.ring();
        ComplexReport {
            k,
            p: ring.p(),
            m: ring.m(),
            summands: (0..=k).map(|i| self.lattice.count(i)).collect(),
            w_dims: (0..=k).map(|i| self.models[i][0].dim()).collect(),
            exactness: check_exactness(&dims, &maps),
        }
    }
}

pub fn transition_complex_exactness(k: usize, p: u64, m: u32) -> Result<ComplexReport, CharError> {
    let c = TransitionComplex::new(k, p, m)?;
    for i in 0..=k {
        let d0 = c.models[i][0].dim();
        if c.models[i].iter().any(|w| w.dim() != d0) {
            return Err(CharError::Mismatch(format!("W_H dimensions differ among rank-{i} summands")));
        }
    }
    Ok(c.report())
}

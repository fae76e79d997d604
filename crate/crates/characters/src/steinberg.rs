//! Functions on complete flags of a summand `H` annihilated by every
//! single-step replacement sum, and permutation characters on partial
//! flags.

use crate::summands::SummandLattice;
use lk_exact::{Kernel, Q};
use lk_ring::fmat;
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};

/// The space `W_H` inside functions on complete flags
/// `0 ⊂ H_1 ⊂ ⋯ ⊂ H_{j−1} ⊂ H` (each flag listed as the indices of
/// `H_1, …, H_{j−1}` in the ambient lattice).
#[derive(Clone, Debug)]
pub struct FlagModel {
    rank: usize,
    top: usize,
    flags: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    kernel: Kernel,
    coord: Vec<Option<usize>>,
}

impl FlagModel {
    /// `W_H` for the summand `top` of rank `rank` in `lat`.
    pub fn new(lat: &SummandLattice, rank: usize, top: usize) -> FlagModel {
        let flags = lat.chains_below(rank, top);
        let index: HashMap<Vec<usize>, usize> = flags.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
        let mut rows = Vec::new();
        for pos in 0..rank.saturating_sub(1) {
            let mut groups: BTreeMap<Vec<usize>, Vec<(usize, i64)>> = BTreeMap::new();
            for (i, f) in flags.iter().enumerate() {
                let mut rest = f.clone();
                rest.remove(pos);
                groups.entry(rest).or_default().push((i, 1));
            }
            rows.extend(groups.into_values());
        }
        let kernel = Kernel::of_sparse_int(&rows, flags.len());
        let mut coord = vec![None; flags.len()];
        for (b, &c) in kernel.free_cols().iter().enumerate() {
            coord[c] = Some(b);
        }
        FlagModel { rank, top, flags, index, kernel, coord }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn dim(&self) -> usize {
        self.kernel.dim()
    }

    pub fn flag_count(&self) -> usize {
        self.flags.len()
    }

    pub fn flags(&self) -> &[Vec<usize>] {
        &self.flags
    }

    pub fn flag_index(&self, f: &[usize]) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// Basis position of flag `col` when it is one of the free flags, whose
    /// values are the coordinates of an element of `W_H`.
    pub fn coord_of(&self, col: usize) -> Option<usize> {
        self.coord[col]
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    /// Trace of `g` acting by `(g f)(F) = f(g^{-1} F)`; requires `g` to fix
    /// the top summand (always true when it is the whole space).
    pub fn trace(&self, lat: &SummandLattice, g: &[u32]) -> Q {
        let ginv = fmat::inv(lat.ring(), g).expect("g is invertible");
        let mut t = Q::zero();
        for (b, &col) in self.kernel.free_cols().iter().enumerate() {
            let moved: Vec<usize> =
                self.flags[col].iter().enumerate().map(|(pos, &h)| lat.act(&ginv, pos + 1, h)).collect();
            let j = self.index[&moved];
            t += self.kernel.entry(b, j);
        }
        t
    }
}

/// Number of partial flags with the given ranks (strictly increasing) fixed
/// by `g`.
pub fn fixed_flags(lat: &SummandLattice, ranks: &[usize], g: &[u32]) -> u64 {
    let mut prev: Option<(usize, Vec<(usize, u64)>)> = None;
    for &rk in ranks {
        let fixed = lat.fixed(g, rk);
        let level: Vec<(usize, u64)> = match &prev {
            None => fixed.into_iter().map(|h| (h, 1)).collect(),
            Some((pr, items)) => fixed
                .into_iter()
                .map(|h| (h, items.iter().filter(|(s, _)| lat.contains((*pr, *s), (rk, h))).map(|(_, c)| c).sum()))
                .collect(),
        };
        prev = Some((rk, level));
    }
    prev.map_or(1, |(_, items)| items.iter().map(|(_, c)| c).sum())
}

/// `Σ_{D ⊆ {1..k−1}} (−1)^{k−1−|D|} · #(g-fixed flags with ranks D)`.
pub fn steinberg_alternating(lat: &SummandLattice, g: &[u32]) -> i64 {
    let k = lat.k();
    if k <= 1 {
        return 1;
    }
    let mut total = 0i64;
    for mask in 0u32..(1 << (k - 1)) {
        let ranks: Vec<usize> = (0..k - 1).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
        let sign = if (k - 1 - ranks.len()) % 2 == 0 { 1 } else { -1 };
        total += sign * fixed_flags(lat, &ranks, g) as i64;
    }
    total
}

/// Flag ranks of the standard parabolic with the given block sizes.
pub fn shape_ranks(shape: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    let mut out = Vec::new();
    for &d in &shape[..shape.len().saturating_sub(1)] {
        acc += d;
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use lk_ring::FiniteRing;
    use std::sync::Arc;

    fn lattice(p: u64, m: u32, k: usize) -> SummandLattice {
        SummandLattice::new(Arc::new(FiniteRing::new(p, m, 1).unwrap()), k).unwrap()
    }

    #[test]
    fn documented_dimensions() {
        for (p, k, dim) in [(2u64, 1usize, 1usize), (2, 2, 2), (3, 2, 3), (2, 3, 8)] {
            let l = lattice(p, 1, k);
            let f = FlagModel::new(&l, k, 0);
            assert_eq!(f.dim(), dim, "p={p} k={k}");
        }
        let l = lattice(2, 1, 2);
        assert_eq!(FlagModel::new(&l, 2, 0).flag_count(), 3);
    }

    #[test]
    fn trace_at_identity_is_dimension() {
        let l = lattice(3, 1, 2);
        let f = FlagModel::new(&l, 2, 0);
        assert_eq!(f.trace(&l, &fmat::identity(2)), Q::from_integer(3.into()));
    }

    #[test]
    fn fixed_flag_counts() {
        let l = lattice(2, 1, 3);
        let e = fmat::identity(3);
        assert_eq!(fixed_flags(&l, &[], &e), 1);
        assert_eq!(fixed_flags(&l, &[1], &e), 7);
        assert_eq!(fixed_flags(&l, &[1, 2], &e), 21);
        assert_eq!(steinberg_alternating(&l, &e), 21 - 7 - 7 + 1);
        assert_eq!(shape_ranks(&[1, 2]), vec![1]);
        assert_eq!(shape_ranks(&[3]), Vec::<usize>::new());
    }
}

//! Free direct summands of `(Z/p^m)^k` and the action of `GL_k(Z/p^m)`.
//!
//! A rank-`j` summand `H` is stored by its canonical basis: the unique
//! `j × k` matrix `B` whose rows span `H` and which is the identity on its
//! pivot columns (the pivots of the reduced echelon form of `B mod p`).
//! Vectors are columns and `g` acts by `v ↦ g v`, so `gH` is spanned by the
//! rows of `B g^t`.

use crate::error::CharError;
use lk_ring::fmat::{self, Mat};
use lk_ring::{limits, FiniteRing};
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub rank: usize,
    /// `rank × k`, row-major.
    pub basis: Mat,
    pub pivots: Vec<usize>,
}

/// All free direct summands of `V = (Z/p^m)^k`, by rank, with the covering
/// relation `H' ⊂ H`, `rank H' = rank H − 1`.
#[derive(Debug)]
pub struct SummandLattice {
    ring: Arc<FiniteRing>,
    k: usize,
    by_rank: Vec<Vec<Summand>>,
    index: Vec<HashMap<Mat, usize>>,
    below: Vec<Vec<Vec<usize>>>,
}

/// Unit-pivot Gauss-Jordan elimination of the rows of `a` (`rows × k`).
/// Returns `None` unless the rows are independent mod `p`.
pub fn canonical_basis(r: &FiniteRing, a: &[u32], rows: usize, k: usize) -> Option<(Mat, Vec<usize>)> {
    let mut b = a.to_vec();
    let mut pivots = Vec::with_capacity(rows);
    let mut next = 0;
    for c in 0..k {
        if next == rows {
            break;
        }
        let Some(i) = (next..rows).find(|&i| r.is_unit(b[i * k + c])) else { continue };
        for j in 0..k {
            b.swap(next * k + j, i * k + j);
        }
        let inv = r.inv(b[next * k + c]).unwrap();
        for j in 0..k {
            b[next * k + j] = r.mul(b[next * k + j], inv);
        }
        for i in 0..rows {
            if i == next || b[i * k + c] == 0 {
                continue;
            }
            let f = b[i * k + c];
            for j in 0..k {
                let t = r.mul(f, b[next * k + j]);
                b[i * k + j] = r.sub(b[i * k + j], t);
            }
        }
        pivots.push(c);
        next += 1;
    }
    (next == rows).then_some((b, pivots))
}

/// Number of rank-`j` free summands of `(Z/p^m)^k`:
/// `p^{(m−1) j (k−j)}` times the Gaussian binomial.
pub fn summand_count(p: u64, m: u32, k: usize, j: usize) -> u128 {
    let (p, j, k) = (p as u128, j as u32, k as u32);
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..j {
        num *= p.pow(k - i) - 1;
        den *= p.pow(i + 1) - 1;
    }
    p.pow((m - 1) * j * (k - j)) * num / den
}

impl SummandLattice {
    pub fn new(ring: Arc<FiniteRing>, k: usize) -> Result<SummandLattice, CharError> {
        if ring.r() != 1 {
            return Err(CharError::Invalid("summands are taken over Z/p^m".into()));
        }
        let total: u128 = (0..=k).map(|j| summand_count(ring.p(), ring.m(), k, j)).sum();
        limits::check("direct summands", total)?;
        let r = &*ring;
        let mut by_rank = Vec::with_capacity(k + 1);
        for j in 0..=k {
            by_rank.push(enumerate_rank(r, k, j));
        }
        let index: Vec<HashMap<Mat, usize>> = by_rank
            .iter()
            .map(|hs| hs.iter().enumerate().map(|(i, h)| (h.basis.clone(), i)).collect())
            .collect();
        let mut lat = SummandLattice { ring, k, by_rank, index, below: vec![] };
        let mut below = vec![vec![]];
        for j in 1..=k {
            let level = (0..lat.by_rank[j].len())
                .map(|h| (0..lat.by_rank[j - 1].len()).filter(|&s| lat.contains((j - 1, s), (j, h))).collect())
                .collect();
            below.push(level);
        }
        lat.below = below;
        Ok(lat)
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn count(&self, rank: usize) -> usize {
        self.by_rank[rank].len()
    }

    pub fn summand(&self, rank: usize, i: usize) -> &Summand {
        &self.by_rank[rank][i]
    }

    /// Rank-`(rank−1)` summands contained in summand `i` of rank `rank`.
    pub fn below(&self, rank: usize, i: usize) -> &[usize] {
        &self.below[rank][i]
    }

    /// Index of the summand spanned by the rows of `a`.
    pub fn lookup(&self, a: &[u32], rank: usize) -> Option<usize> {
        let (b, _) = canonical_basis(&self.ring, a, rank, self.k)?;
        self.index[rank].get(&b).copied()
    }

    /// Whether `small ⊆ big`, each given as `(rank, index)`.
    pub fn contains(&self, small: (usize, usize), big: (usize, usize)) -> bool {
        let r = &*self.ring;
        let k = self.k;
        let s = &self.by_rank[small.0][small.1];
        let b = &self.by_rank[big.0][big.1];
        (0..s.rank).all(|i| {
            let v = &s.basis[i * k..(i + 1) * k];
            let mut w = v.to_vec();
            for (l, &pc) in b.pivots.iter().enumerate() {
                let c = v[pc];
                for j in 0..k {
                    w[j] = r.sub(w[j], r.mul(c, b.basis[l * k + j]));
                }
            }
            w.iter().all(|&x| x == 0)
        })
    }

    /// Index of `gH` for `H` = summand `i` of rank `rank`.
    pub fn act(&self, g: &[u32], rank: usize, i: usize) -> usize {
        if rank == 0 || rank == self.k {
            return 0;
        }
        let h = &self.by_rank[rank][i];
        let bg = fmat::mul_rect(&self.ring, &h.basis, &fmat::transpose(g), rank, self.k, self.k);
        self.lookup(&bg, rank).expect("GL_k permutes summands")
    }

    /// Matrix of `g|_H` in the canonical basis of `H` (assumes `gH = H`).
    pub fn restrict(&self, g: &[u32], rank: usize, i: usize) -> Mat {
        let k = self.k;
        let h = &self.by_rank[rank][i];
        let bg = fmat::mul_rect(&self.ring, &h.basis, &fmat::transpose(g), rank, k, k);
        let mut out = vec![0; rank * rank];
        for (l, &pc) in h.pivots.iter().enumerate() {
            for c in 0..rank {
                out[l * rank + c] = bg[c * k + pc];
            }
        }
        out
    }

    /// Matrix of `g` on `V/H` in the basis of the non-pivot unit vectors
    /// (assumes `gH = H`).
    pub fn quotient(&self, g: &[u32], rank: usize, i: usize) -> Mat {
        let r = &*self.ring;
        let k = self.k;
        let h = &self.by_rank[rank][i];
        let free: Vec<usize> = (0..k).filter(|c| !h.pivots.contains(c)).collect();
        let d = free.len();
        let mut out = vec![0; d * d];
        for (ci, &c) in free.iter().enumerate() {
            let mut w: Vec<u32> = (0..k).map(|row| g[row * k + c]).collect();
            for (l, &pc) in h.pivots.iter().enumerate() {
                let f = w[pc];
                for j in 0..k {
                    w[j] = r.sub(w[j], r.mul(f, h.basis[l * k + j]));
                }
            }
            for (ri, &row) in free.iter().enumerate() {
                out[ri * d + ci] = w[row];
            }
        }
        out
    }

    /// Summands of rank `rank` fixed by `g`.
    pub fn fixed(&self, g: &[u32], rank: usize) -> Vec<usize> {
        (0..self.count(rank)).filter(|&i| self.act(g, rank, i) == i).collect()
    }

    /// Chains `H_1 ⊂ ⋯ ⊂ H_{rank−1}` of summands ending below summand
    /// `top` of rank `rank`, each listed by indices of ranks `1..rank`.
    pub fn chains_below(&self, rank: usize, top: usize) -> Vec<Vec<usize>> {
        if rank <= 1 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for &h in self.below(rank, top) {
            for mut c in self.chains_below(rank - 1, h) {
                c.push(h);
                out.push(c);
            }
        }
        out.sort();
        out
    }
}

fn enumerate_rank(r: &FiniteRing, k: usize, j: usize) -> Vec<Summand> {
    let pm = r.pm() as u32;
    let p = r.p() as u32;
    let mut out = Vec::new();
    for pivots in subsets(k, j) {
        // Free slots: row i, non-pivot column c. Left of the row's pivot the
        // entry must vanish mod p.
        let slots: Vec<(usize, usize, bool)> = (0..j)
            .flat_map(|i| {
                let piv = &pivots;
                (0..k).filter(move |c| !piv.contains(c)).map(move |c| (i, c, c < piv[i]))
            })
            .collect();
        let radix: Vec<u32> = slots.iter().map(|s| if s.2 { pm / p } else { pm }).collect();
        let total: u64 = radix.iter().map(|&x| x as u64).product();
        for mut code in 0..total {
            let mut b = vec![0u32; j * k];
            for (i, &pc) in pivots.iter().enumerate() {
                b[i * k + pc] = 1;
            }
            for (s, &(i, c, divisible)) in slots.iter().enumerate().rev() {
                let digit = (code % radix[s] as u64) as u32;
                code /= radix[s] as u64;
                b[i * k + c] = if divisible { digit * p } else { digit };
            }
            out.push(Summand { rank: j, basis: b, pivots: pivots.clone() });
        }
    }
    out.sort_by(|a, b| a.basis.cmp(&b.basis));
    out
}

fn subsets(k: usize, j: usize) -> Vec<Vec<usize>> {
    if j == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for last in (j - 1)..k {
        for mut s in subsets(last, j - 1) {
            s.push(last);
            out.push(s);
        }
    }
    out
}

//! Shared data for all characters of `GL_j(Z/p^m)`, `j ≤ n`: summand
//! lattices, Steinberg flag models and (lazily) the groups themselves.

use crate::error::CharError;
use crate::group::FiniteLinearGroup;
use crate::steinberg::{fixed_flags, shape_ranks, steinberg_alternating, FlagModel};
use crate::summands::SummandLattice;
use lk_exact::rational::q_pow;
use lk_exact::{fmt_q, q, Q};
use lk_ring::fmat;
use lk_ring::FiniteRing;
use num_traits::{One, Zero};
use std::sync::{Arc, OnceLock};

#[derive(Debug)]
pub struct Level {
    p: u64,
    m: u32,
    n: usize,
    ring: Arc<FiniteRing>,
    lattices: Vec<SummandLattice>,
    st: Vec<FlagModel>,
    groups: Vec<OnceLock<Result<Arc<FiniteLinearGroup>, CharError>>>,
}

impl Level {
    pub fn new(n: usize, p: u64, m: u32) -> Result<Level, CharError> {
        let ring = Arc::new(FiniteRing::new(p, m, 1)?);
        let lattices: Vec<SummandLattice> =
            (0..=n).map(|j| SummandLattice::new(ring.clone(), j)).collect::<Result<_, _>>()?;
        let st = lattices.iter().enumerate().map(|(j, l)| FlagModel::new(l, j, 0)).collect();
        let groups = (0..=n).map(|_| OnceLock::new()).collect();
        Ok(Level { p, m, n, ring, lattices, st, groups })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn lattice(&self, j: usize) -> &SummandLattice {
        &self.lattices[j]
    }

    pub fn steinberg(&self, j: usize) -> &FlagModel {
        &self.st[j]
    }

    pub fn group(&self, k: usize) -> Result<Arc<FiniteLinearGroup>, CharError> {
        if k == 0 || k > self.n {
            return Err(CharError::Invalid(format!("rank {k} outside 1..={}", self.n)));
        }
        self.groups[k].get_or_init(|| FiniteLinearGroup::new(k, self.p, self.m).map(Arc::new)).clone()
    }

    fn rank_of(&self, g: &[u32]) -> usize {
        let k = fmat::dim(g);
        assert!(k <= self.n, "matrix of size {k} exceeds level rank {}", self.n);
        k
    }

    /// Character of the flag model of `St_k` at `g ∈ GL_k`.
    pub fn st(&self, g: &[u32]) -> Q {
        let k = self.rank_of(g);
        self.st[k].trace(&self.lattices[k], g)
    }

    /// Alternating sum of permutation characters on partial flags.
    pub fn st_virtual(&self, g: &[u32]) -> Q {
        let k = self.rank_of(g);
        q(steinberg_alternating(&self.lattices[k], g))
    }

    /// Permutation character on cosets of the standard parabolic of the
    /// given shape.
    pub fn induced_trivial(&self, shape: &[usize], g: &[u32]) -> Q {
        let k = self.rank_of(g);
        assert_eq!(shape.iter().sum::<usize>(), k);
        q(fixed_flags(&self.lattices[k], &shape_ranks(shape), g) as i64)
    }

    /// `Ind_{P_{j,k}} St_j ⊗ 1` at `g ∈ GL_k`.
    pub fn ind_st(&self, j: usize, g: &[u32]) -> Q {
        let k = self.rank_of(g);
        let lat = &self.lattices[k];
        lat.fixed(g, j).into_iter().fold(Q::zero(), |acc, h| acc + self.st(&lat.restrict(g, j, h)))
    }

    /// The two expressions for `I_k^0` at `g`: the `1/(1−p^r)` formula and
    /// the integral rewrite.
    pub fn ik0_parts(&self, r: u32, g: &[u32]) -> (Q, Q) {
        let k = self.rank_of(g);
        let pr = q_pow(self.p as i64, r as i64);
        let ind: Vec<Q> = (0..=k).map(|j| self.ind_st(j, g)).collect();
        let mut a = Q::zero();
        let mut w = Q::one();
        for (j, v) in ind.iter().enumerate() {
            let term = &w * v;
            a = if j % 2 == 0 { a + term } else { a - term };
            w = &w * &pr;
        }
        a /= Q::one() - &pr;
        let mut b = Q::zero();
        let mut partial = Q::zero();
        let mut w = Q::one();
        for (j, v) in ind.iter().take(k).enumerate() {
            partial = if j % 2 == 0 { partial + v } else { partial - v };
            b += &w * &partial;
            w = &w * &pr;
        }
        (a, b)
    }

    /// `I_k^0` at `g`, erroring if the two formulas disagree.
    pub fn ik0(&self, r: u32, g: &[u32]) -> Result<Q, CharError> {
        let (a, b) = self.ik0_parts(r, g);
        if a != b {
            return Err(CharError::Mismatch(format!("I_k^0 formulas differ: {} vs {}", fmt_q(&a), fmt_q(&b))));
        }
        Ok(a)
    }

    /// `Σ_{i ≤ j} (−1)^i Ind_{P_{i,k}} St_i ⊗ 1` at `g`.
    pub fn subquotient(&self, j: usize, g: &[u32]) -> Q {
        (0..=j).fold(Q::zero(), |acc, i| if i % 2 == 0 { acc + self.ind_st(i, g) } else { acc - self.ind_st(i, g) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        let l = Level::new(3, 2, 1).unwrap();
        let e2 = fmat::identity(2);
        let e3 = fmat::identity(3);
        assert_eq!(l.st(&e2), q(2));
        assert_eq!(l.st(&e3), q(8));
        assert_eq!(l.st_virtual(&e3), q(8));
        assert_eq!(l.induced_trivial(&[1, 1], &e2), q(3));
        assert_eq!(l.induced_trivial(&[2], &e2), q(1));
        assert_eq!(l.ind_st(1, &e3), q(7));
        assert_eq!(l.ik0(1, &e2).unwrap(), q(-3));
        assert_eq!(l.ik0(5, &fmat::identity(1)).unwrap(), q(1));
        assert_eq!(l.subquotient(1, &e2), q(-2));
        assert_eq!(l.subquotient(1, &e3), q(-6));
        let l3 = Level::new(2, 3, 1).unwrap();
        assert_eq!(l3.induced_trivial(&[1, 1], &e2), q(4));
        assert_eq!(l3.st(&e2), q(3));
    }

    #[test]
    fn order_three_element() {
        let l = Level::new(2, 2, 1).unwrap();
        let g = vec![0, 1, 1, 1];
        // St_2 of GL_2(F_2) is -1 on elements of order 3
        assert_eq!(l.st(&g), q(-1));
        assert_eq!(l.st(&g), l.st_virtual(&g));
        let (a, b) = l.ik0_parts(1, &g);
        assert_eq!(a, b);
    }
}

use crate::error::GroupError;
use crate::spec::{build_model, IntegralModelSpec};
use lk_ring::fmat::{self, Mat};
use lk_ring::{limits, FiniteRing, RingParams};
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

/// `G_M(R) / G_{M,I}(R)` with `R = GR(p^m, r)`, fully enumerated.
///
/// Elements are `u32` ids. Ids are assigned in increasing key order of the
/// canonical representatives, which are the lexicographically least
/// matrices of their cosets.
#[derive(Debug)]
pub struct QuotientGroup {
    spec: IntegralModelSpec,
    ring: Arc<FiniteRing>,
    n: usize,
    reps: Vec<Mat>,
    coset_of: HashMap<u128, u32>,
    sigma: Vec<u32>,
    level_size: usize,
    identity: u32,
}

pub fn build_quotient(spec: &IntegralModelSpec, params: &RingParams) -> Result<QuotientGroup, GroupError> {
    let ring = Arc::new(FiniteRing::from_params(params)?);
    QuotientGroup::build(spec, ring)
}

/// `GL_n(GR(p^m, r))` as the quotient with full order and `c = m`.
pub fn general_linear(n: usize, p: u64, m: u32, r: usize) -> Result<QuotientGroup, GroupError> {
    let ring = Arc::new(FiniteRing::new(p, m, r)?);
    QuotientGroup::build(&IntegralModelSpec::full(n, m), ring)
}

impl QuotientGroup {
    pub fn build(spec: &IntegralModelSpec, ring: Arc<FiniteRing>) -> Result<QuotientGroup, GroupError> {
        let r = &*ring;
        let n = spec.n;
        let model = build_model(spec, r)?;
        let order = model.order.enumerate(r, n)?;
        let units: Vec<&Mat> = order.iter().filter(|a| fmat::is_invertible(r, a)).collect();
        let one = fmat::identity(n);
        let level: Vec<Mat> = model
            .ideal
            .enumerate(r, n)?
            .iter()
            .map(|i| fmat::add(r, &one, i))
            .filter(|k| fmat::is_invertible(r, k))
            .collect();
        limits::check("quotient group units", units.len() as u128)?;
        let mut coset_of: HashMap<u128, u32> = HashMap::with_capacity(units.len());
        let mut reps = Vec::new();
        // `units` is in key order, so the first unassigned unit is the least
        // member of its coset.
        for g in units {
            let kg = fmat::key(r, g);
            if coset_of.contains_key(&kg) {
                continue;
            }
            let id = reps.len() as u32;
            for k in &level {
                let gk = fmat::mul(r, g, k);
                let prev = coset_of.insert(fmat::key(r, &gk), id);
                debug_assert!(prev.is_none() || prev == Some(id));
            }
            reps.push(g.clone());
        }
        let mut q = QuotientGroup {
            spec: spec.clone(),
            ring: ring.clone(),
            n,
            reps,
            coset_of,
            sigma: vec![],
            level_size: level.len(),
            identity: 0,
        };
        q.identity = q.id_of(&one).ok_or_else(|| GroupError::IllFormed("identity is not a unit of the order".into()))?;
        q.sigma = (0..q.size() as u32)
            .map(|a| {
                let s = fmat::frob(&q.ring, &q.reps[a as usize]);
                q.id_of(&s).ok_or_else(|| GroupError::IllFormed("model is not stable under Frobenius".into()))
            })
            .collect::<Result<_, _>>()?;
        Ok(q)
    }

    pub fn spec(&self) -> &IntegralModelSpec {
        &self.spec
    }
    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn size(&self) -> usize {
        self.reps.len()
    }
    /// `|G_{M,I}(R)|`.
    pub fn level_size(&self) -> usize {
        self.level_size
    }
    pub fn identity(&self) -> u32 {
        self.identity
    }
    pub fn rep(&self, a: u32) -> &Mat {
        &self.reps[a as usize]
    }
    pub fn reps(&self) -> &[Mat] {
        &self.reps
    }

    /// Coset id of a unit of `M`, or `None` when `a` is not one.
    pub fn id_of(&self, a: &[u32]) -> Option<u32> {
        self.coset_of.get(&fmat::key(&self.ring, a)).copied()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let c = fmat::mul(&self.ring, self.rep(a), self.rep(b));
        self.coset_of[&fmat::key(&self.ring, &c)]
    }

    pub fn inv(&self, a: u32) -> u32 {
        let c = fmat::inv(&self.ring, self.rep(a)).expect("representatives are units");
        self.coset_of[&fmat::key(&self.ring, &c)]
    }

    pub fn sigma(&self, a: u32) -> u32 {
        self.sigma[a as usize]
    }

    pub fn sigma_pow(&self, a: u32, k: usize) -> u32 {
        (0..k % self.ring.r()).fold(a, |x, _| self.sigma(x))
    }

    /// `δ δ^σ ⋯ δ^{σ^{r-1}}`.
    pub fn norm_element(&self, d: u32) -> u32 {
        let mut acc = d;
        let mut s = d;
        for _ in 1..self.ring.r() {
            s = self.sigma(s);
            acc = self.mul(acc, s);
        }
        acc
    }

    /// `g^{-1} x g^σ`.
    pub fn sigma_conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), self.sigma(g))
    }

    /// `g^{-1} x g`.
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// Elements fixed by sigma, in id order.
    pub fn sigma_fixed(&self) -> Vec<u32> {
        (0..self.size() as u32).filter(|&a| self.sigma(a) == a).collect()
    }

    /// A generating set of the subgroup `elements`, chosen greedily in id
    /// order.
    pub fn generators_of(&self, elements: &[u32]) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span: HashSet<u32> = HashSet::from([self.identity]);
        for &x in elements {
            if span.contains(&x) {
                continue;
            }
            gens.push(x);
            span = self.closure(&gens);
            if span.len() == elements.len() {
                break;
            }
        }
        gens
    }

    pub fn closure(&self, gens: &[u32]) -> HashSet<u32> {
        let mut seen = HashSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Canonical image of this group's element in `coarse`, a quotient of
    /// the same units by a larger level subgroup.
    pub fn project(&self, a: u32, coarse: &QuotientGroup) -> Option<u32> {
        coarse.id_of(self.rep(a))
    }

    /// Entries as coefficient vectors, row by row.
    pub fn matrix_json(&self, a: u32) -> Vec<Vec<Vec<u64>>> {
        let n = self.n;
        let rep = self.rep(a);
        (0..n).map(|i| (0..n).map(|j| self.ring.coeffs(rep[i * n + j])).collect()).collect()
    }
}

//! `GL_k(Z/p^m)` with its conjugacy classes, or a fixed sample of elements
//! when the group is too large to enumerate.

use crate::error::CharError;
use lk_group::{conjugacy_classes, general_linear, ClassTable, GroupError, QuotientGroup};
use lk_ring::fmat::{self, Mat};
use lk_ring::{FiniteRing, RingError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Number of sampled elements used when `GL_k(Z/p^m)` exceeds the cap.
pub const SAMPLE_POINTS: usize = 40;
const SAMPLE_SEED: u64 = 0x5eed_0001;

#[derive(Debug)]
pub enum Points {
    Classes { group: QuotientGroup, classes: ClassTable },
    Sampled(Vec<Mat>),
}

#[derive(Debug)]
pub struct FiniteLinearGroup {
    pub k: usize,
    pub p: u64,
    pub m: u32,
    ring: Arc<FiniteRing>,
    order: u128,
    points: Points,
}

/// `p^{k^2 (m−1)} ∏_{i<k} (p^k − p^i)`.
pub fn gl_order(k: usize, p: u64, m: u32) -> u128 {
    let p = p as u128;
    let k32 = k as u32;
    let base: u128 = (0..k32).map(|i| p.pow(k32) - p.pow(i)).product();
    base * p.pow(k32 * k32 * (m - 1))
}

impl FiniteLinearGroup {
    pub fn new(k: usize, p: u64, m: u32) -> Result<FiniteLinearGroup, CharError> {
        if k == 0 {
            return Err(CharError::Invalid("k must be at least 1".into()));
        }
        let ring = Arc::new(FiniteRing::new(p, m, 1)?);
        let order = gl_order(k, p, m);
        let points = match general_linear(k, p, m, 1) {
            Ok(group) => {
                if group.size() as u128 != order {
                    return Err(CharError::Mismatch(format!("|GL_{k}(Z/{p}^{m})| = {} != {order}", group.size())));
                }
                let all: Vec<u32> = (0..group.size() as u32).collect();
                let classes = conjugacy_classes(&group, &all);
                let total: usize = classes.classes.iter().map(|c| c.size).sum();
                if total as u128 != order {
                    return Err(CharError::Mismatch("class sizes do not sum to the group order".into()));
                }
                Points::Classes { group, classes }
            }
            Err(GroupError::Ring(RingError::CapExceeded { .. })) => Points::Sampled(sample(&ring, k)),
            Err(e) => return Err(e.into()),
        };
        Ok(FiniteLinearGroup { k, p, m, ring, order, points })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    /// True when values are attached to conjugacy classes, false when they
    /// are attached to sampled elements.
    pub fn is_classwise(&self) -> bool {
        matches!(self.points, Points::Classes { .. })
    }

    pub fn points_kind(&self) -> &Points {
        &self.points
    }

    /// Class representatives, or the sampled elements.
    pub fn points(&self) -> Vec<Mat> {
        match &self.points {
            Points::Classes { group, classes } => classes.classes.iter().map(|c| group.rep(c.rep).clone()).collect(),
            Points::Sampled(s) => s.clone(),
        }
    }

    pub fn quotient(&self) -> Option<&QuotientGroup> {
        match &self.points {
            Points::Classes { group, .. } => Some(group),
            Points::Sampled(_) => None,
        }
    }

    pub fn classes(&self) -> Option<&ClassTable> {
        match &self.points {
            Points::Classes { classes, .. } => Some(classes),
            Points::Sampled(_) => None,
        }
    }

    /// Conjugacy class of an invertible matrix (enumerated groups only).
    pub fn class_of(&self, g: &[u32]) -> Option<u32> {
        let Points::Classes { group, classes } = &self.points else { return None };
        classes.class_of(group.id_of(g)?)
    }

    pub fn centralizer_of(&self, g: &[u32]) -> Option<usize> {
        let c = self.class_of(g)?;
        Some(self.classes()?.classes[c as usize].centralizer)
    }

    /// Index of the point carrying the value of `g`: its class, or its
    /// position among the samples.
    pub fn point_of(&self, g: &[u32]) -> Option<usize> {
        match &self.points {
            Points::Classes { .. } => self.class_of(g).map(|c| c as usize),
            Points::Sampled(s) => s.iter().position(|x| x == g),
        }
    }

    pub fn label(&self) -> String {
        format!("GL_{}(Z/{}^{})", self.k, self.p, self.m)
    }
}

/// The identity followed by seeded uniform invertible matrices.
fn sample(r: &FiniteRing, k: usize) -> Vec<Mat> {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED ^ (r.p() << 8) ^ ((r.m() as u64) << 4) ^ k as u64);
    let mut out = vec![fmat::identity(k)];
    while out.len() < SAMPLE_POINTS {
        let g: Mat = (0..k * k).map(|_| rng.gen_range(0..r.size())).collect();
        if fmat::is_invertible(r, &g) {
            out.push(g);
        }
    }
    out
}

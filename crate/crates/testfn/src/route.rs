//! The strata side of the semisimple-trace identity: sum over Frobenius
//! and `h^∨`-fixed level structures of the stalk-model trace.

use crate::context::TraceContext;
use crate::error::TestFnError;
use crate::phi::{delta2_id, prepare};
use lk_characters::{matrix_to_rows, HeckeFunction};
use lk_exact::rational::serde_q;
use lk_exact::Q;
use lk_group::conjugacy_classes;
use lk_padic::{double_coset_membership, etale_split, height_of_delta, PadicMatrix};
use lk_ring::fmat::{self, Mat};
use lk_ring::limits;
use num_traits::Zero;
use serde::Serialize;
use std::collections::{HashSet, VecDeque};

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub k: Option<usize>,
    #[serde(with = "serde_q")]
    pub route_a: Q,
    #[serde(with = "serde_q")]
    pub route_b: Q,
    pub equal: bool,
    /// Level structures fixed by `Φ × b` summed over the support of `h^∨`.
    pub fixed_level_structures: usize,
    /// The sigma-fixed conjugate of `Nδ₂` found by the orbit search.
    pub n_delta2_b: Option<Vec<Vec<u64>>>,
    /// Whether the sigma-fixed members of that orbit form a single class of
    /// `GL_{n−k}(Z/p^m)`.
    pub orbit_single_class: bool,
}

impl TraceContext {
    /// `Nδ₂` mod `p^m`, conjugated inside `GL_{n−k}(GR(p^m, r))` to a matrix
    /// over `Z/p^m` by searching its conjugation orbit.
    fn n_delta2_by_orbit(&self, d2: &PadicMatrix, r: u32) -> Result<(Mat, bool), TestFnError> {
        let j = d2.n();
        let nd = self.norm_data(j, r as usize)?;
        let q = &nd.group;
        let x = q.norm_element(delta2_id(self, q, d2)?);
        let all: Vec<u32> = (0..q.size() as u32).collect();
        let gens = q.generators_of(&all);
        let mut seen = HashSet::from([x]);
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for &g in &gens {
                let z = q.conj(g, y);
                if seen.insert(z) {
                    queue.push_back(z);
                }
            }
        }
        let mut fixed: Vec<u32> = seen.into_iter().filter(|&y| q.sigma(y) == y).collect();
        fixed.sort_unstable();
        let first = *fixed.first().ok_or_else(|| TestFnError::Mismatch("no sigma-fixed conjugate of Nδ₂".into()))?;
        let small = conjugacy_classes(q, &q.sigma_fixed());
        let single = fixed.iter().all(|&y| small.class_of(y) == small.class_of(first));
        Ok((self.to_base(q, first)?, single))
    }

    /// Both sides of `tr^{ss}(Φ_{p^r} × h^∨ | stalk) = φ_h(δ₀)`.
    pub fn consistency(&self, h: &HeckeFunction, d: &PadicMatrix, r: u32) -> Result<ConsistencyReport, TestFnError> {
        let route_a = self.phi(h, d, r)?;
        let d = prepare(self, d, r)?;
        if !double_coset_membership(&d)? {
            let equal = route_a.value.is_zero();
            return Ok(ConsistencyReport {
                k: None,
                route_a: route_a.value,
                route_b: Q::zero(),
                equal,
                fixed_level_structures: 0,
                n_delta2_b: None,
                orbit_single_class: true,
            });
        }
        let d = d.integral_part()?;
        let n = self.n();
        let k = height_of_delta(&d)?;
        let split = etale_split(&d)?;
        let (nd2, single) = if k < n { self.n_delta2_by_orbit(&split.delta2, r)? } else { (Vec::new(), true) };
        let strata = self.strata()?;
        let lat = self.level().lattice(n);
        let ring = self.level().ring().clone();
        let e = n - k;
        let pm = ring.pm();
        limits::check("level structures", (pm as u128).pow((e * n) as u32))?;
        // surjections (Z/p^m)^n → (Z/p^m)^{n−k}, as e × n matrices
        let mut maps: Vec<Mat> = Vec::new();
        for mut t in 0..pm.pow((e * n) as u32) {
            let phi: Mat = (0..e * n).map(|_| { let c = (t % pm) as u32; t /= pm; c }).collect();
            if e == 0 || lk_characters::summands::canonical_basis(&ring, &phi, e, n).is_some() {
                maps.push(phi);
            }
        }
        let group = self.group();
        let hv = self.h_vee(h);
        let mut total = Q::zero();
        let mut fixed_count = 0;
        for (&b, mass) in hv.masses() {
            let bm = group.rep(b);
            let bt = fmat::transpose(bm);
            let a = fmat::transpose(&fmat::inv(&ring, bm).expect("units"));
            for phi in &maps {
                let moved = if e == 0 {
                    Vec::new()
                } else {
                    let left = fmat::mul_rect(&ring, &nd2, phi, e, e, n);
                    fmat::mul_rect(&ring, &left, &bt, e, n, n)
                };
                if &moved != phi {
                    continue;
                }
                fixed_count += 1;
                let kernel = (0..lat.count(k))
                    .find(|&i| {
                        let basis_t = fmat::transpose_rect(&lat.summand(k, i).basis, k, n);
                        e == 0 || fmat::mul_rect(&ring, phi, &basis_t, e, n, k).iter().all(|&x| x == 0)
                    })
                    .ok_or_else(|| TestFnError::Mismatch("level structure has no free kernel".into()))?;
                total += mass * strata.ss_trace(r, &a, strata.elem(k, kernel))?;
            }
        }
        let equal = total == route_a.value;
        Ok(ConsistencyReport {
            k: Some(k),
            route_a: route_a.value,
            route_b: total,
            equal,
            fixed_level_structures: fixed_count,
            n_delta2_b: Some(matrix_to_rows(e, &nd2)),
            orbit_single_class: single,
        })
    }
}

/// One-shot consistency check on a fresh context.
pub fn ss_trace_consistency(h: &HeckeFunction, d: &PadicMatrix, r: u32) -> Result<ConsistencyReport, TestFnError> {
    TraceContext::new(h.n(), h.p(), h.m())?.consistency(h, d, r)
}

//! Compactly supported functions on `GL_n(Q_{p^r})` given as finite sums of
//! values on double cosets `K diag(p^{e_1}, …, p^{e_n}) K`, optionally cut
//! down to a level-`m` residue set.

use crate::error::OrbitalError;
use lk_exact::rational::serde_q;
use lk_exact::{q, Q};
use lk_group::{general_linear, QuotientGroup};
use lk_padic::{Entry, PadicMatrix};
use lk_ring::{fmat, fmat::Mat, FiniteRing};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::sync::Arc;

/// Integral matrices reduced mod `p^m`; a component with residues is the
/// indicator of its double coset intersected with the preimage of this set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueSet {
    pub m: u32,
    pub matrices: Vec<Vec<Vec<Entry>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportComponent {
    /// Elementary-divisor valuations, sorted ascending.
    pub divisors: Vec<i64>,
    #[serde(default)]
    pub residues: Option<ResidueSet>,
    #[serde(with = "serde_q")]
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportSpec {
    pub components: Vec<SupportComponent>,
}

impl SupportSpec {
    pub fn new(components: Vec<SupportComponent>) -> Result<SupportSpec, OrbitalError> {
        let s = SupportSpec { components };
        s.validate()?;
        Ok(s)
    }

    pub fn indicator(divisors: Vec<i64>) -> SupportSpec {
        let mut divisors = divisors;
        divisors.sort_unstable();
        SupportSpec { components: vec![SupportComponent { divisors, residues: None, value: q(1) }] }
    }

    /// The indicator of `K diag(p, 1, …, 1) K`.
    pub fn unit(n: usize) -> SupportSpec {
        let mut d = vec![0; n];
        d[n - 1] = 1;
        SupportSpec::indicator(d)
    }

    pub fn n(&self) -> Option<usize> {
        self.components.first().map(|c| c.divisors.len())
    }

    pub fn validate(&self) -> Result<(), OrbitalError> {
        let n = self.n().unwrap_or(0);
        for (i, c) in self.components.iter().enumerate() {
            if c.divisors.len() != n || n == 0 {
                return Err(OrbitalError::Invalid("every component needs n divisors".into()));
            }
            if c.divisors.windows(2).any(|w| w[0] > w[1]) {
                return Err(OrbitalError::Invalid("divisors must be sorted ascending".into()));
            }
            if let Some(res) = &c.residues {
                if res.m == 0 || c.divisors[0] < 0 {
                    return Err(OrbitalError::Invalid("residue sets need m >= 1 and an integral double coset".into()));
                }
                if res.matrices.iter().any(|m| m.len() != n || m.iter().any(|row| row.len() != n)) {
                    return Err(OrbitalError::Invalid(format!("residue matrices must be {n} x {n}")));
                }
            }
            for o in &self.components[..i] {
                // components on the same double coset are disjoint only
                // through their residue sets, which must then be disjoint
                if o.divisors == c.divisors {
                    match (&o.residues, &c.residues) {
                        (Some(a), Some(b)) if a.m == b.m && a.matrices.iter().all(|m| !b.matrices.contains(m)) => {}
                        _ => return Err(OrbitalError::Invalid(format!("overlapping components at {:?}", c.divisors))),
                    }
                }
            }
        }
        Ok(())
    }

    pub fn needs_residues(&self) -> bool {
        self.components.iter().any(|c| c.residues.is_some())
    }
}

/// Evaluates a support spec at `y`, averaging residue conditions over
/// `k ∈ GL_n(GR(p^m, r))` acting by `y ↦ k^{-1} y k^σ` (or plain
/// conjugation).
pub(crate) struct Evaluator<'a> {
    spec: &'a SupportSpec,
    residues: Vec<Option<Residues>>,
}

struct Residues {
    ring: Arc<FiniteRing>,
    group: QuotientGroup,
    set: HashSet<Mat>,
    // (k^{-1}, k^σ) for every k
    pairs: Vec<(Mat, Mat)>,
}

impl<'a> Evaluator<'a> {
    pub fn new(spec: &'a SupportSpec, n: usize, p: u64, r: usize, twisted: bool) -> Result<Evaluator<'a>, OrbitalError> {
        spec.validate()?;
        if spec.n() != Some(n) {
            return Err(OrbitalError::Invalid(format!("support is for n = {:?}, matrix has n = {n}", spec.n())));
        }
        let mut residues = Vec::new();
        for c in &spec.components {
            residues.push(match &c.residues {
                None => None,
                Some(res) => {
                    let group = general_linear(n, p, res.m, r)?;
                    let ring = group.ring().clone();
                    let mut set = HashSet::new();
                    for m in &res.matrices {
                        let mut e = Vec::with_capacity(n * n);
                        for x in m.iter().flatten() {
                            e.push(entry_index(&ring, x)?);
                        }
                        set.insert(e);
                    }
                    let pairs = group
                        .reps()
                        .iter()
                        .map(|k| {
                            let ks = if twisted { fmat::frob(&ring, k) } else { k.clone() };
                            (fmat::inv(&ring, k).expect("group element"), ks)
                        })
                        .collect();
                    Some(Residues { ring, group, set, pairs })
                }
            });
        }
        Ok(Evaluator { spec, residues })
    }

    /// `f(y)` given the elementary divisors of `y`.
    pub fn eval(&self, divisors: &[i64], y: &PadicMatrix) -> Result<Q, OrbitalError> {
        let mut total = Q::zero();
        for (c, res) in self.spec.components.iter().zip(&self.residues) {
            if c.divisors != divisors {
                continue;
            }
            match res {
                None => total += &c.value,
                Some(res) => {
                    let yi = y.integral_part()?;
                    let m = res.ring.m();
                    if yi.precision() < m {
                        return Err(lk_padic::PadicError::Precision(format!("residues mod p^{m} not determined")).into());
                    }
                    let ybar: Mat = yi.reduce_rows(m).iter().flatten().map(|c| res.ring.index(c)).collect();
                    let hits = res
                        .pairs
                        .iter()
                        .filter(|(ki, ks)| res.set.contains(&fmat::mul(&res.ring, &fmat::mul(&res.ring, ki, &ybar), ks)))
                        .count();
                    total += &c.value * Q::new((hits as i64).into(), (res.group.size() as i64).into());
                }
            }
        }
        Ok(total)
    }
}

fn entry_index(ring: &FiniteRing, x: &Entry) -> Result<u32, OrbitalError> {
    let pm = ring.pm() as i64;
    let mut c: Vec<u64> = match x {
        Entry::Int(v) => vec![v.rem_euclid(pm) as u64],
        Entry::Coeffs(v) => v.iter().map(|c| c.rem_euclid(pm) as u64).collect(),
    };
    if c.len() > ring.r() {
        return Err(OrbitalError::Invalid(format!("entry has more than r = {} coefficients", ring.r())));
    }
    c.resize(ring.r(), 0);
    Ok(ring.index(&c))
}

/// `1 + p^r + ⋯ + p^{(n−1)r}`.
pub fn volume_closed_form(n: usize, p: u64, r: usize) -> u64 {
    let q = p.pow(r as u32);
    (0..n as u32).map(|i| q.pow(i)).sum()
}

/// The level-0 function on `GL_n(Q_p)` whose orbital integrals match the
/// twisted orbital integrals of `1_{K diag(p,1,…,1) K}` over the degree-`r`
/// unramified extension (`n ≤ 2`): `1_{K diag(p^r) K}` for `n = 1`, and
/// `1_{K diag(p^r, 1) K} + (1 − p) Σ_{1 ≤ j ≤ r/2} 1_{K diag(p^{r−j}, p^j) K}`
/// for `n = 2`.
pub fn unit_transfer(n: usize, p: u64, r: usize) -> Result<SupportSpec, OrbitalError> {
    let r = r as i64;
    match n {
        1 => Ok(SupportSpec::indicator(vec![r])),
        2 => {
            let mut components = vec![SupportComponent { divisors: vec![0, r], residues: None, value: q(1) }];
            for j in 1..=r / 2 {
                components.push(SupportComponent { divisors: vec![j, r - j], residues: None, value: q(1 - p as i64) });
            }
            SupportSpec::new(components)
        }
        _ => Err(OrbitalError::Invalid(format!("unit transfer is implemented for n <= 2, got {n}"))),
    }
}

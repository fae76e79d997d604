//! The action of `GL_n(Z/p^m)` on the summand poset and its `W` spaces, and
//! the traces of group elements on nearby-cycle stalk models.

use crate::error::StrataError;
use crate::poset::{build_summand_poset, StrataPoset};
use crate::star::{check_star, stalk_dims, StarReport};
use crate::wspaces::{compute_w_spaces, WAssignment};
use lk_characters::Level;
use lk_exact::rational::{q_pow, serde_q, serde_q_vec};
use lk_exact::{fmt_q, Q};
use lk_ring::fmat;
use num_traits::{One, Zero};
use serde::Serialize;

pub struct EquivariantStrata {
    n: usize,
    poset: StrataPoset,
    w: WAssignment,
    star: StarReport,
}

impl EquivariantStrata {
    pub fn new(n: usize, p: u64, m: u32) -> Result<EquivariantStrata, StrataError> {
        let poset = build_summand_poset(n, p, m)?;
        let w = compute_w_spaces(&poset);
        let star = check_star(&poset, &w);
        Ok(EquivariantStrata { n, poset, w, star })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn poset(&self) -> &StrataPoset {
        &self.poset
    }
    pub fn w(&self) -> &WAssignment {
        &self.w
    }
    pub fn star(&self) -> &StarReport {
        &self.star
    }

    /// Stratum of the summand `(rank, index)`.
    pub fn elem(&self, rank: usize, i: usize) -> usize {
        self.poset.summands().expect("summand poset").elem(rank, i)
    }

    /// The stratum `M^V` of the whole space, of codimension `n`.
    pub fn top(&self) -> usize {
        self.elem(self.n, 0)
    }

    pub fn act(&self, g: &[u32], e: usize) -> usize {
        let d = self.poset.summands().expect("summand poset");
        let (rank, i) = d.summand_of(e);
        d.elem(rank, d.lattice.act(g, rank, i))
    }

    /// Image under `g` of the vector with coordinates `coords` in `W_e`, as
    /// coordinates in `W_{ge}`. Blocks are moved recursively; the result is
    /// checked to lie in `W_{ge}`.
    pub fn push(&self, g: &[u32], e: usize, coords: &[Q]) -> Result<(usize, Vec<Q>), StrataError> {
        if e == 0 {
            return Ok((0, coords.to_vec()));
        }
        let ge = self.act(g, e);
        let s = self.w.space(e);
        let t = self.w.space(ge);
        let mut v = vec![Q::zero(); s.source_dim()];
        for (b, c) in coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (col, x) in s.kernel.vector(b) {
                v[col] += c * x;
            }
        }
        let mut out = vec![Q::zero(); t.source_dim()];
        for (i, &z) in s.source.iter().enumerate() {
            let sub = &v[s.offsets[i]..s.offsets[i] + self.w.dim(z)];
            if sub.iter().all(Zero::is_zero) {
                continue;
            }
            let (gz, img) = self.push(g, z, sub)?;
            let j = *t.block.get(&gz).ok_or_else(|| StrataError::Mismatch("g does not preserve containment".into()))?;
            for (c, x) in img.into_iter().enumerate() {
                out[t.offsets[j] + c] = x;
            }
        }
        let coords = t.kernel.coords_of(&out);
        let mut back = vec![Q::zero(); t.source_dim()];
        for (b, c) in coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (col, x) in t.kernel.vector(b) {
                back[col] += c * x;
            }
        }
        if back != out {
            return Err(StrataError::Mismatch(format!("g does not map W_{} into W_{}", self.poset.id(e), self.poset.id(ge))));
        }
        Ok((ge, coords))
    }

    /// Trace of `g` on `W_e`, for `ge = e`.
    pub fn trace_w(&self, g: &[u32], e: usize) -> Result<Q, StrataError> {
        let d = self.w.dim(e);
        let mut t = Q::zero();
        for b in 0..d {
            let mut unit = vec![Q::zero(); d];
            unit[b] = Q::one();
            let (ge, img) = self.push(g, e, &unit)?;
            if ge != e {
                return Err(StrataError::Mismatch(format!("g moves {}", self.poset.id(e))));
            }
            t += &img[b];
        }
        Ok(t)
    }

    /// Trace of `g` on the stalk `⊕_{c(Z) = j, x ∈ Z} W_Z` at a point `x`
    /// of the open part of `point`; `g` must fix `point`.
    pub fn stalk_trace(&self, g: &[u32], point: usize, j: usize) -> Result<Q, StrataError> {
        if !self.star.holds {
            return Err(StrataError::StarNotVerified);
        }
        if self.act(g, point) != point {
            return Err(StrataError::Mismatch(format!("g moves the point stratum {}", self.poset.id(point))));
        }
        let mut t = Q::zero();
        for z in self.poset.containing(point, j) {
            if self.act(g, z) == z {
                t += self.trace_w(g, z)?;
            }
        }
        Ok(t)
    }

    /// `(1/(1−p^r)) Σ_j (−1)^j p^{rj} tr(g | R^j)` at a point of `point`.
    pub fn ss_trace(&self, r: u32, g: &[u32], point: usize) -> Result<Q, StrataError> {
        let traces: Vec<Q> =
            (0..=self.poset.codim(point)).map(|j| self.stalk_trace(g, point, j)).collect::<Result<_, _>>()?;
        Ok(alternating(self.p(), r, &traces))
    }

    fn p(&self) -> u64 {
        self.poset.summands().unwrap().lattice.ring().p()
    }
}

fn alternating(p: u64, r: u32, traces: &[Q]) -> Q {
    let pr = q_pow(p as i64, r as i64);
    let mut acc = Q::zero();
    let mut w = Q::one();
    for (j, t) in traces.iter().enumerate() {
        let term = &w * t;
        acc = if j % 2 == 0 { acc + term } else { acc - term };
        w = &w * &pr;
    }
    acc / (Q::one() - pr)
}

#[derive(Clone, Debug, Serialize)]
pub struct SsTraceStalk {
    pub k: usize,
    pub p: u64,
    pub m: u32,
    pub r: u32,
    pub g: Vec<Vec<u64>>,
    /// `tr(g | R^j)` for `j = 0..=k`.
    #[serde(with = "serde_q_vec")]
    pub stalk_traces: Vec<Q>,
    #[serde(with = "serde_q")]
    pub value: Q,
}

/// Semisimple trace of `Φ_{p^r} × g` on the nearby cycles at a point of
/// the rank-`k` stratum, from the stalk model. Each `tr(g | R^j)` must equal
/// `Ind_{P_{j,k}} St_j ⊗ 1 (g)` and the total must equal `I_k^0(g)`.
pub fn ss_trace_stalk(k: usize, p: u64, m: u32, r: u32, g: &[u32]) -> Result<SsTraceStalk, StrataError> {
    let eq = EquivariantStrata::new(k, p, m)?;
    let level = Level::new(k, p, m)?;
    if fmat::dim(g) != k || !fmat::is_invertible(level.ring(), g) {
        return Err(StrataError::Invalid(format!("g must be an invertible {k} x {k} matrix")));
    }
    let top = eq.top();
    let mut stalk_traces = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let t = eq.stalk_trace(g, top, j)?;
        let ind = level.ind_st(j, g);
        if t != ind {
            return Err(StrataError::Mismatch(format!("tr(g | R^{j}) = {} but the induced character is {}", fmt_q(&t), fmt_q(&ind))));
        }
        stalk_traces.push(t);
    }
    let value = alternating(p, r, &stalk_traces);
    let ik0 = level.ik0(r, g)?;
    if value != ik0 {
        return Err(StrataError::Mismatch(format!("stalk route {} but I_k^0(g) = {}", fmt_q(&value), fmt_q(&ik0))));
    }
    let g = (0..k).map(|i| (0..k).map(|j| g[i * k + j] as u64).collect()).collect();
    Ok(SsTraceStalk { k, p, m, r, g, stalk_traces, value })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NearbyRow {
    pub j: usize,
    pub stalk_dim: usize,
    pub induced_degree: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NearbyReport {
    pub n: usize,
    pub p: u64,
    pub m: u32,
    pub k: usize,
    pub point: String,
    pub rows: Vec<NearbyRow>,
    pub holds: bool,
}

/// Stalk dimensions at a point of a rank-`k` stratum of the summand poset
/// against the degrees of `Ind_{P_{j,k}} St_j ⊗ 1`, `0 ≤ j ≤ k`.
pub fn nearby_cycle_dims_check(n: usize, p: u64, m: u32, k: usize) -> Result<NearbyReport, StrataError> {
    if k == 0 || k > n {
        return Err(StrataError::Invalid(format!("stratum rank {k} outside 1..={n}")));
    }
    let poset = build_summand_poset(n, p, m)?;
    let w = compute_w_spaces(&poset);
    let star = check_star(&poset, &w);
    let level = Level::new(k, p, m)?;
    let e = fmat::identity(k);
    let point = format!("H{k}.0");
    let mut rows = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let stalk_dim = stalk_dims(&poset, &w, &star, &point, j)?.dim;
        let deg = level.ind_st(j, &e);
        let induced_degree = deg.to_integer().try_into().map_err(|_| StrataError::Mismatch("degree out of range".into()))?;
        rows.push(NearbyRow { j, stalk_dim, induced_degree, equal: stalk_dim == induced_degree });
    }
    let holds = rows.iter().all(|r| r.equal);
    Ok(NearbyReport { n, p, m, k, point, rows, holds })
}

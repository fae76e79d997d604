//! Tabulated virtual characters and the trace identities built from them.

use crate::error::CharError;
use crate::group::FiniteLinearGroup;
use crate::hecke::{matrix_to_rows, HeckeFunction};
use crate::level::Level;
use lk_exact::rational::q_pow;
use lk_exact::{fmt_q, q, Q};
use lk_ring::fmat::{self, Mat};
use num_traits::Zero;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Arc;

/// Values of a virtual character at the points of a group: its conjugacy
/// classes, or its fixed sample when the group is not enumerated.
#[derive(Clone, Debug)]
pub struct VirtualClassFunction {
    pub group: Arc<FiniteLinearGroup>,
    pub values: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassValue {
    pub class_rep: Vec<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_size: Option<usize>,
    #[serde(with = "lk_exact::rational::serde_q")]
    pub value: Q,
}

impl VirtualClassFunction {
    pub fn tabulate(
        group: Arc<FiniteLinearGroup>,
        mut f: impl FnMut(&Mat) -> Result<Q, CharError>,
    ) -> Result<VirtualClassFunction, CharError> {
        let values = group.points().iter().map(&mut f).collect::<Result<_, _>>()?;
        Ok(VirtualClassFunction { group, values })
    }

    pub fn is_classwise(&self) -> bool {
        self.group.is_classwise()
    }

    /// Value at `g`, if `g` is one of the tabulated points (or, classwise,
    /// any element).
    pub fn value_at(&self, g: &[u32]) -> Option<Q> {
        self.group.point_of(g).map(|i| self.values[i].clone())
    }

    pub fn degree(&self) -> Q {
        self.value_at(&fmat::identity(self.group.k)).expect("identity is always a point")
    }

    pub fn entries(&self) -> Vec<ClassValue> {
        let sizes = self.group.classes().map(|t| t.classes.iter().map(|c| c.size).collect::<Vec<_>>());
        self.group
            .points()
            .iter()
            .enumerate()
            .map(|(i, g)| ClassValue {
                class_rep: matrix_to_rows(self.group.k, g),
                class_size: sizes.as_ref().map(|s| s[i]),
                value: self.values[i].clone(),
            })
            .collect()
    }

    /// Indices of the points where the two functions differ.
    pub fn differences(&self, other: &VirtualClassFunction) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i] != other.values[i]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicShape(Vec<usize>);

impl ParabolicShape {
    pub fn new(parts: Vec<usize>) -> Result<ParabolicShape, CharError> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(CharError::Invalid("parabolic blocks must be positive".into()));
        }
        Ok(ParabolicShape(parts))
    }

    /// Levi `GL_j × GL_{k−j}`; `j = 0` or `j = k` gives the whole group.
    pub fn maximal(j: usize, k: usize) -> ParabolicShape {
        ParabolicShape(if j == 0 || j == k { vec![k] } else { vec![j, k - j] })
    }

    pub fn borel(k: usize) -> ParabolicShape {
        ParabolicShape(vec![1; k])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.iter().sum()
    }
}

/// `|B(Z/p^m)|` for the upper triangular Borel subgroup.
pub fn borel_order(k: usize, p: u64, m: u32) -> u128 {
    let p = p as u128;
    let torus = (p.pow(m - 1) * (p - 1)).pow(k as u32);
    torus * p.pow(m * (k * (k - 1) / 2) as u32)
}

pub fn induced_trivial(level: &Level, shape: &ParabolicShape) -> Result<VirtualClassFunction, CharError> {
    let g = level.group(shape.k())?;
    VirtualClassFunction::tabulate(g, |x| Ok(level.induced_trivial(shape.parts(), x)))
}

/// Dimension of the flag model of `St_k` and its character; the number of
/// flags is checked against `[GL_k : B]`.
pub fn steinberg_flag_model(level: &Level, k: usize) -> Result<(usize, VirtualClassFunction), CharError> {
    let model = level.steinberg(k);
    let index = crate::group::gl_order(k, level.p(), level.m()) / borel_order(k, level.p(), level.m());
    if model.flag_count() as u128 != index {
        return Err(CharError::Mismatch(format!("{} flags, but [GL_k : B] = {index}", model.flag_count())));
    }
    let g = level.group(k)?;
    let chi = VirtualClassFunction::tabulate(g, |x| Ok(level.st(x)))?;
    Ok((model.dim(), chi))
}

pub fn steinberg_virtual(level: &Level, k: usize) -> Result<VirtualClassFunction, CharError> {
    VirtualClassFunction::tabulate(level.group(k)?, |x| Ok(level.st_virtual(x)))
}

/// `I_k^0`, checked against its integral rewrite and against `g ↦ g^{-1}`.
pub fn ik0(level: &Level, k: usize, r: u32) -> Result<VirtualClassFunction, CharError> {
    let ring = level.ring().clone();
    VirtualClassFunction::tabulate(level.group(k)?, |x| {
        let v = level.ik0(r, x)?;
        let xinv = fmat::inv(&ring, x).expect("points are invertible");
        let w = level.ik0(r, &xinv)?;
        if v != w {
            return Err(CharError::Mismatch(format!("I_k^0 is not self-dual: {} vs {}", fmt_q(&v), fmt_q(&w))));
        }
        Ok(v)
    })
}

pub fn subquotient_restriction(level: &Level, n: usize, j: usize) -> Result<VirtualClassFunction, CharError> {
    if j >= n {
        return Err(CharError::Invalid(format!("j = {j} must be below n = {n}")));
    }
    VirtualClassFunction::tabulate(level.group(n)?, |x| Ok(level.subquotient(j, x)))
}

/// Memoized values of `I_k^0` on `GL_k(Z/p^m)`, keyed by class when the
/// group is enumerated.
struct Ik0Cache<'a> {
    level: &'a Level,
    r: u32,
    groups: HashMap<usize, Arc<FiniteLinearGroup>>,
    values: HashMap<(usize, Mat), Q>,
}

impl<'a> Ik0Cache<'a> {
    fn new(level: &'a Level, r: u32) -> Self {
        Ik0Cache { level, r, groups: HashMap::new(), values: HashMap::new() }
    }

    fn get(&mut self, g: &Mat) -> Result<Q, CharError> {
        let k = fmat::dim(g);
        if !self.groups.contains_key(&k) {
            self.groups.insert(k, self.level.group(k)?);
        }
        let grp = &self.groups[&k];
        let key = match (grp.quotient(), grp.class_of(g)) {
            (Some(qg), Some(c)) => qg.rep(grp.classes().unwrap().classes[c as usize].rep).clone(),
            _ => g.clone(),
        };
        if let Some(v) = self.values.get(&(k, key.clone())) {
            return Ok(v.clone());
        }
        let v = self.level.ik0(self.r, &key)?;
        self.values.insert((k, key), v.clone());
        Ok(v)
    }
}

fn check_hecke(level: &Level, n: usize, k: usize, h: &HeckeFunction) -> Result<Arc<FiniteLinearGroup>, CharError> {
    if k == 0 || k > n {
        return Err(CharError::Invalid(format!("k = {k} outside 1..={n}")));
    }
    if n > level.n() || (h.n(), h.p(), h.m()) != (n, level.p(), level.m()) {
        return Err(CharError::Invalid("Hecke function does not live on GL_n(Z/p^m) of this level".into()));
    }
    let g = level.group(n)?;
    if g.quotient().is_none() {
        return Err(CharError::Invalid(format!("{} is too large to enumerate", g.label())));
    }
    Ok(g)
}

/// `tr(h × g2 | I_k)` where `I_k = Ind_{P_k} I_k^0 ⊗ C(GL_{n−k}(Z/p^m))`:
/// `Σ_g h(g) Σ_{gH = H, rank H = k} I_k^0(g|_H) · |C(g2)| · [g|_{V/H} ~ g2]`.
pub fn ik_trace(level: &Level, n: usize, k: usize, r: u32, h: &HeckeFunction, g2: &[u32]) -> Result<Q, CharError> {
    let gn = check_hecke(level, n, k, h)?;
    let qn = gn.quotient().unwrap();
    let (target, cent) = if k < n {
        if fmat::dim(g2) != n - k || !fmat::is_invertible(level.ring(), g2) {
            return Err(CharError::Invalid(format!("g2 must be an invertible {} x {} matrix", n - k, n - k)));
        }
        let g2grp = level.group(n - k)?;
        let c = g2grp.class_of(g2).ok_or_else(|| CharError::Invalid("GL_{n-k} is not enumerated".into()))?;
        (Some((g2grp.clone(), c)), q(g2grp.centralizer_of(g2).unwrap() as i64))
    } else {
        if !g2.is_empty() {
            return Err(CharError::Invalid("g2 must be empty when k = n".into()));
        }
        (None, q(1))
    };
    let lat = level.lattice(n);
    let mut cache = Ik0Cache::new(level, r);
    let mut total = Q::zero();
    for (&x, mass) in h.masses() {
        let g = qn.rep(x);
        for hh in lat.fixed(g, k) {
            if let Some((grp, c)) = &target {
                if grp.class_of(&lat.quotient(g, k, hh)) != Some(*c) {
                    continue;
                }
            }
            total += mass * cache.get(&lat.restrict(g, k, hh))? * &cent;
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceIdentity {
    #[serde(with = "lk_exact::rational::serde_q")]
    pub lhs: Q,
    #[serde(with = "lk_exact::rational::serde_q")]
    pub rhs: Q,
    pub equal: bool,
}

/// lhs: the trace on `π` of `h'(γ) = tr(h × γ | I_k)` as a function on
/// `GL_{n−k}(Z/p^m)` with total measure 1; rhs: the trace of `h` on
/// `Ind_{P_k} I_k^0 ⊗ π`.
pub fn induction_trace_identity(
    level: &Level,
    n: usize,
    k: usize,
    r: u32,
    h: &HeckeFunction,
    pi: &VirtualClassFunction,
) -> Result<TraceIdentity, CharError> {
    let gn = check_hecke(level, n, k, h)?;
    if k == n {
        return Err(CharError::Invalid("the identity needs k < n".into()));
    }
    let g2 = &pi.group;
    let (Some(q2), Some(t2)) = (g2.quotient(), g2.classes()) else {
        return Err(CharError::Invalid("π must be given classwise".into()));
    };
    if (g2.k, g2.p, g2.m) != (n - k, level.p(), level.m()) {
        return Err(CharError::Invalid("π must be a class function on GL_{n-k}(Z/p^m)".into()));
    }
    let mut lhs = Q::zero();
    for (c, e) in t2.classes.iter().enumerate() {
        let t = ik_trace(level, n, k, r, h, q2.rep(e.rep))?;
        lhs += t * &pi.values[c] * q(e.size as i64);
    }
    lhs /= q(q2.size() as i64);
    let qn = gn.quotient().unwrap();
    let lat = level.lattice(n);
    let mut cache = Ik0Cache::new(level, r);
    let mut rhs = Q::zero();
    for (&x, mass) in h.masses() {
        let g = qn.rep(x);
        for hh in lat.fixed(g, k) {
            let c = g2.class_of(&lat.quotient(g, k, hh)).unwrap();
            rhs += mass * cache.get(&lat.restrict(g, k, hh))? * &pi.values[c as usize];
        }
    }
    let equal = lhs == rhs;
    Ok(TraceIdentity { lhs, rhs, equal })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqReprPoint {
    pub class_rep: Vec<Vec<u64>>,
    #[serde(with = "lk_exact::rational::serde_q")]
    pub lhs: Q,
    #[serde(with = "lk_exact::rational::serde_q")]
    pub rhs: Q,
    #[serde(with = "lk_exact::rational::serde_q")]
    pub residual: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqReprReport {
    pub group: String,
    pub classwise: bool,
    pub r: u32,
    pub points: Vec<EqReprPoint>,
}

impl EqReprReport {
    pub fn holds(&self) -> bool {
        self.points.iter().all(|p| p.residual.is_zero())
    }
}

/// `(1 + p^r + ⋯ + p^{(n−1)r}) · 1 = Σ_k p^{(n−k)r} Ind_{P_k} I_k^0 ⊗ 1`,
/// pointwise.
pub fn eqrepr_check(level: &Level, n: usize, r: u32) -> Result<EqReprReport, CharError> {
    let g = level.group(n)?;
    let p = level.p() as i64;
    let lhs: Q = (0..n as i64).map(|i| q_pow(p, i * r as i64)).sum();
    let lat = level.lattice(n);
    let mut cache = Ik0Cache::new(level, r);
    let mut points = Vec::new();
    for x in g.points() {
        let mut rhs = Q::zero();
        for k in 1..=n {
            let w = q_pow(p, ((n - k) as i64) * r as i64);
            for hh in lat.fixed(&x, k) {
                rhs += &w * cache.get(&lat.restrict(&x, k, hh))?;
            }
        }
        points.push(EqReprPoint { class_rep: matrix_to_rows(n, &x), lhs: lhs.clone(), residual: &lhs - &rhs, rhs });
    }
    Ok(EqReprReport { group: g.label(), classwise: g.is_classwise(), r, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use lk_group::general_linear;

    #[test]
    fn documented_degrees() {
        let l = Level::new(3, 2, 1).unwrap();
        assert_eq!(induced_trivial(&l, &ParabolicShape::borel(2)).unwrap().degree(), q(3));
        assert_eq!(induced_trivial(&l, &ParabolicShape::new(vec![2]).unwrap()).unwrap().degree(), q(1));
        let (d, chi) = steinberg_flag_model(&l, 3).unwrap();
        assert_eq!(d, 8);
        assert_eq!(chi.degree(), q(8));
        assert!(steinberg_virtual(&l, 3).unwrap().differences(&chi).is_empty());
        assert_eq!(ik0(&l, 2, 1).unwrap().degree(), q(-3));
        assert_eq!(subquotient_restriction(&l, 3, 1).unwrap().degree(), q(-6));
    }

    #[test]
    fn trivial_cases() {
        let l = Level::new(1, 2, 2).unwrap();
        let g1 = general_linear(1, 2, 2, 1).unwrap();
        let u = HeckeFunction::uniform(&g1);
        assert_eq!(ik_trace(&l, 1, 1, 1, &u, &[]).unwrap(), q(1));
        for x in 0..g1.size() as u32 {
            assert_eq!(ik_trace(&l, 1, 1, 3, &HeckeFunction::point(&g1, x), &[]).unwrap(), q(1));
        }
        for c in ik0(&l, 1, 2).unwrap().values {
            assert_eq!(c, q(1));
        }
    }

    #[test]
    fn eqrepr_small() {
        let l = Level::new(2, 2, 1).unwrap();
        let rep = eqrepr_check(&l, 2, 1).unwrap();
        assert!(rep.holds());
        let e = rep.points.iter().find(|p| p.class_rep == vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(e.lhs, q(3));
    }

    #[test]
    fn shapes() {
        assert!(ParabolicShape::new(vec![1, 0]).is_err());
        assert_eq!(ParabolicShape::maximal(0, 3).parts(), &[3]);
        assert_eq!(ParabolicShape::maximal(1, 3).parts(), &[1, 2]);
        assert_eq!(borel_order(2, 2, 1), 2);
        assert_eq!(borel_order(2, 3, 1), 12);
    }
}

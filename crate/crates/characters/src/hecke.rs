//! Level-`m` elements of the Hecke algebra of `GL_n(Z_p)`, stored as masses
//! on the elements of `GL_n(Z/p^m)`.
//!
//! The mass at `g` is the coefficient of `g · e_{Γ(p^m)}`, so the trace of
//! `h` on a representation `π` is `Σ_g h(g) tr(g | π^{Γ(p^m)})`. The unit
//! density of `GL_n(Z_p)` (measure 1) is the uniform mass `1/|GL_n(Z/p^m)|`.

use crate::error::CharError;
use lk_exact::{q, Q};
use lk_group::QuotientGroup;
use lk_ring::fmat::Mat;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MassEntry {
    pub g: Vec<Vec<u64>>,
    #[serde(with = "lk_exact::rational::serde_q")]
    pub mass: Q,
}

/// JSON form: `{"n":2,"p":2,"m":1,"kind":"uniform"}`, `"kind":"point"` with
/// `"g"`, or `"kind":"masses"` with `"entries"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HeckeSpec {
    Uniform,
    Point { g: Vec<Vec<u64>> },
    Masses { entries: Vec<MassEntry> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeInput {
    pub n: usize,
    pub p: u64,
    pub m: u32,
    #[serde(flatten)]
    pub spec: HeckeSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeFunction {
    n: usize,
    p: u64,
    m: u32,
    masses: BTreeMap<u32, Q>,
}

/// Integer matrix rows to ring indices (residues mod `p^m`).
pub fn matrix_from_rows(group: &QuotientGroup, rows: &[Vec<u64>]) -> Result<Mat, CharError> {
    let n = group.n();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(CharError::Invalid(format!("expected an {n} x {n} matrix")));
    }
    let ring = group.ring();
    Ok(rows.iter().flatten().map(|&x| ring.from_int((x % ring.pm()) as i64)).collect())
}

pub fn matrix_to_rows(n: usize, g: &[u32]) -> Vec<Vec<u64>> {
    (0..n).map(|i| (0..n).map(|j| g[i * n + j] as u64).collect()).collect()
}

fn element(group: &QuotientGroup, rows: &[Vec<u64>]) -> Result<u32, CharError> {
    let g = matrix_from_rows(group, rows)?;
    group.id_of(&g).ok_or_else(|| CharError::Invalid("matrix is not invertible".into()))
}

impl HeckeFunction {
    fn check_group(group: &QuotientGroup) -> Result<(), CharError> {
        let ring = group.ring();
        if ring.r() != 1 || group.level_size() != 1 {
            return Err(CharError::Invalid("Hecke functions live on GL_n(Z/p^m)".into()));
        }
        Ok(())
    }

    pub fn uniform(group: &QuotientGroup) -> HeckeFunction {
        let w = Q::new(1.into(), (group.size() as i64).into());
        let ring = group.ring();
        let masses = (0..group.size() as u32).map(|g| (g, w.clone())).collect();
        HeckeFunction { n: group.n(), p: ring.p(), m: ring.m(), masses }
    }

    /// `g · e_{Γ(p^m)}`.
    pub fn point(group: &QuotientGroup, g: u32) -> HeckeFunction {
        let ring = group.ring();
        HeckeFunction { n: group.n(), p: ring.p(), m: ring.m(), masses: BTreeMap::from([(g, q(1))]) }
    }

    pub fn from_masses(group: &QuotientGroup, masses: BTreeMap<u32, Q>) -> HeckeFunction {
        let ring = group.ring();
        let masses = masses.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        HeckeFunction { n: group.n(), p: ring.p(), m: ring.m(), masses }
    }

    pub fn from_input(input: &HeckeInput, group: &QuotientGroup) -> Result<HeckeFunction, CharError> {
        Self::check_group(group)?;
        let ring = group.ring();
        if (input.n, input.p, input.m) != (group.n(), ring.p(), ring.m()) {
            return Err(CharError::Invalid("Hecke function parameters do not match the group".into()));
        }
        match &input.spec {
            HeckeSpec::Uniform => Ok(Self::uniform(group)),
            HeckeSpec::Point { g } => Ok(Self::point(group, element(group, g)?)),
            HeckeSpec::Masses { entries } => {
                let mut masses: BTreeMap<u32, Q> = BTreeMap::new();
                for e in entries {
                    *masses.entry(element(group, &e.g)?).or_default() += &e.mass;
                }
                Ok(Self::from_masses(group, masses))
            }
        }
    }

    pub fn to_input(&self, group: &QuotientGroup) -> HeckeInput {
        let entries = self
            .masses
            .iter()
            .map(|(&g, v)| MassEntry { g: matrix_to_rows(self.n, group.rep(g)), mass: v.clone() })
            .collect();
        HeckeInput { n: self.n, p: self.p, m: self.m, spec: HeckeSpec::Masses { entries } }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Nonzero masses by element id of `GL_n(Z/p^m)`.
    pub fn masses(&self) -> &BTreeMap<u32, Q> {
        &self.masses
    }

    pub fn mass(&self, g: u32) -> Q {
        self.masses.get(&g).cloned().unwrap_or_default()
    }

    pub fn total_mass(&self) -> Q {
        self.masses.values().fold(Q::zero(), |a, b| a + b)
    }

    /// Pointwise image under a permutation of the group.
    pub fn map_elements(&self, f: impl Fn(u32) -> u32) -> HeckeFunction {
        let mut masses: BTreeMap<u32, Q> = BTreeMap::new();
        for (&g, v) in &self.masses {
            *masses.entry(f(g)).or_default() += v;
        }
        HeckeFunction { masses, ..self.clone() }
    }

    pub fn scale(&self, c: &Q) -> HeckeFunction {
        let masses = self.masses.iter().map(|(&g, v)| (g, v * c)).filter(|(_, v)| !v.is_zero()).collect();
        HeckeFunction { masses, ..self.clone() }
    }

    pub fn add(&self, other: &HeckeFunction) -> HeckeFunction {
        let mut masses = self.masses.clone();
        for (&g, v) in &other.masses {
            *masses.entry(g).or_default() += v;
        }
        masses.retain(|_, v| !v.is_zero());
        HeckeFunction { masses, ..self.clone() }
    }

    pub fn is_on(&self, group: &QuotientGroup) -> bool {
        let ring = group.ring();
        (self.n, self.p, self.m) == (group.n(), ring.p(), ring.m())
            && self.masses.keys().all(|&g| (g as usize) < group.size())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lk_group::general_linear;

    #[test]
    fn json_forms() {
        let g = general_linear(2, 2, 1, 1).unwrap();
        let u: HeckeInput = serde_json::from_str(r#"{"n":2,"p":2,"m":1,"kind":"uniform"}"#).unwrap();
        let h = HeckeFunction::from_input(&u, &g).unwrap();
        assert_eq!(h.total_mass(), q(1));
        let pt: HeckeInput = serde_json::from_str(r#"{"n":2,"p":2,"m":1,"kind":"point","g":[[0,1],[1,1]]}"#).unwrap();
        let h = HeckeFunction::from_input(&pt, &g).unwrap();
        assert_eq!(h.masses().len(), 1);
        let back = HeckeFunction::from_input(&h.to_input(&g), &g).unwrap();
        assert_eq!(back, h);
        let bad: HeckeInput = serde_json::from_str(r#"{"n":2,"p":2,"m":1,"kind":"point","g":[[1,1],[1,1]]}"#).unwrap();
        assert!(HeckeFunction::from_input(&bad, &g).is_err());
    }
}

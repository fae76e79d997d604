//! Integral models: an order `M ⊆ M_n(O)` and a two-sided ideal `I ⊆ M`.

use crate::error::GroupError;
use lk_ring::fmat::{self, Mat};
use lk_ring::{limits, FiniteRing};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum OrderSpec {
    /// `M = M_n(O)`.
    Full,
    /// Stabilizer of the standard lattice chain with the given block
    /// breakpoints: entries strictly below the block diagonal lie in `pO`.
    Parahoric { breakpoints: Vec<usize> },
    /// `O`-span of the given integer matrices, plus `p^m M_n(O)`.
    Explicit { generators: Vec<Vec<Vec<u64>>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum IdealSpec {
    /// `I = M ∩ p^c M_n(O)`.
    Congruence { c: u32 },
    /// `O`-span of the given integer matrices; must be a two-sided ideal.
    Explicit { generators: Vec<Vec<Vec<u64>>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralModelSpec {
    pub n: usize,
    pub order: OrderSpec,
    pub ideal: IdealSpec,
}

impl IntegralModelSpec {
    pub fn full(n: usize, c: u32) -> Self {
        IntegralModelSpec { n, order: OrderSpec::Full, ideal: IdealSpec::Congruence { c } }
    }

    pub fn parahoric(n: usize, breakpoints: Vec<usize>, c: u32) -> Self {
        IntegralModelSpec { n, order: OrderSpec::Parahoric { breakpoints }, ideal: IdealSpec::Congruence { c } }
    }
}

/// An additive subgroup of `M_n(R)`.
#[derive(Clone, Debug)]
pub(crate) enum Module {
    /// Entry `(i, j)` ranges over elements of valuation at least `e[i*n+j]`.
    Entrywise(Vec<u32>),
    Set(HashSet<u128>),
}

impl Module {
    pub fn contains(&self, r: &FiniteRing, a: &[u32]) -> bool {
        match self {
            Module::Entrywise(e) => a.iter().zip(e).all(|(&x, &ei)| r.valuation(x) >= ei),
            Module::Set(s) => s.contains(&fmat::key(r, a)),
        }
    }

    pub fn enumerate(&self, r: &FiniteRing, n: usize) -> Result<Vec<Mat>, GroupError> {
        match self {
            Module::Set(s) => {
                let mut keys: Vec<u128> = s.iter().copied().collect();
                keys.sort_unstable();
                Ok(keys.into_iter().map(|k| fmat::from_key(r, k, n * n)).collect())
            }
            Module::Entrywise(e) => {
                let choices: Vec<Vec<u32>> = e
                    .iter()
                    .map(|&ei| (0..r.size()).filter(|&x| r.valuation(x) >= ei).collect())
                    .collect();
                let total = choices.iter().try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128));
                limits::check("integral model", total.unwrap_or(u128::MAX))?;
                // Odometer over the choices, last entry fastest, so the output
                // is in key order.
                let total = total.unwrap() as usize;
                let mut out = Vec::with_capacity(total);
                let mut idx = vec![0usize; e.len()];
                for _ in 0..total {
                    out.push(idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect());
                    for pos in (0..idx.len()).rev() {
                        idx[pos] += 1;
                        if idx[pos] < choices[pos].len() {
                            break;
                        }
                        idx[pos] = 0;
                    }
                }
                Ok(out)
            }
        }
    }
}

fn block_of(breakpoints: &[usize], i: usize) -> usize {
    breakpoints.iter().filter(|&&b| b <= i).count()
}

fn integer_matrix(r: &FiniteRing, n: usize, g: &[Vec<u64>]) -> Result<Mat, GroupError> {
    if g.len() != n || g.iter().any(|row| row.len() != n) {
        return Err(GroupError::IllFormed(format!("generator is not {n} x {n}")));
    }
    Ok(g.iter().flatten().map(|&x| r.from_int((x % r.pm()) as i64)).collect())
}

/// `x^t · g` for all generators and `t < r`: additive generators of the
/// `O_L`-span.
fn span_generators(r: &FiniteRing, gens: &[Mat]) -> Vec<Mat> {
    let mut out = Vec::new();
    let pm = r.pm() as u32;
    for t in 0..r.r() {
        let xt = pm.pow(t as u32);
        for g in gens {
            out.push(fmat::scale(r, g, xt));
        }
    }
    out
}

fn additive_closure(r: &FiniteRing, gens: &[Mat], n: usize) -> Result<HashSet<u128>, GroupError> {
    let cap = limits::max_elements();
    let zero = vec![0u32; n * n];
    let mut seen = HashSet::new();
    seen.insert(fmat::key(r, &zero));
    let mut frontier = vec![zero];
    while let Some(a) = frontier.pop() {
        for g in gens {
            let b = fmat::add(r, &a, g);
            if seen.insert(fmat::key(r, &b)) {
                if seen.len() as u128 > cap {
                    limits::check("integral model", seen.len() as u128)?;
                }
                frontier.push(b);
            }
        }
    }
    Ok(seen)
}

pub(crate) struct BuiltModel {
    pub order: Module,
    pub ideal: Module,
}

pub(crate) fn build_model(spec: &IntegralModelSpec, r: &FiniteRing) -> Result<BuiltModel, GroupError> {
    let n = spec.n;
    if n == 0 {
        return Err(GroupError::IllFormed("n must be at least 1".into()));
    }
    if !fmat::key_fits(r, n * n) {
        return Err(GroupError::IllFormed(format!("matrices of size {n} over {} are too large", r.params().label())));
    }
    let (order, mut order_gens) = match &spec.order {
        OrderSpec::Full => (Module::Entrywise(vec![0; n * n]), unit_gens(n)),
        OrderSpec::Parahoric { breakpoints } => {
            let mut bps = breakpoints.clone();
            bps.sort_unstable();
            bps.dedup();
            if bps.iter().any(|&b| b == 0 || b >= n) {
                return Err(GroupError::IllFormed(format!("breakpoints must lie in 1..{n}")));
            }
            let mut e = vec![0; n * n];
            let mut gens = Vec::new();
            let p = r.from_int(r.p() as i64);
            for i in 0..n {
                for j in 0..n {
                    let below = block_of(&bps, i) > block_of(&bps, j);
                    if below {
                        e[i * n + j] = 1;
                        gens.push(fmat::scale(r, &fmat::unit(n, i, j), p));
                    } else {
                        gens.push(fmat::unit(n, i, j));
                    }
                }
            }
            (Module::Entrywise(e), gens)
        }
        OrderSpec::Explicit { generators } => {
            let gens: Vec<Mat> = generators.iter().map(|g| integer_matrix(r, n, g)).collect::<Result<_, _>>()?;
            let mut add_gens = span_generators(r, &gens);
            // the lift M + p^m M_n is invisible at precision m
            add_gens.retain(|g| g.iter().any(|&x| x != 0));
            let set = additive_closure(r, &add_gens, n)?;
            let module = Module::Set(set);
            if !module.contains(r, &fmat::identity(n)) {
                return Err(GroupError::IllFormed("order does not contain 1".into()));
            }
            for a in &add_gens {
                for b in &add_gens {
                    if !module.contains(r, &fmat::mul(r, a, b)) {
                        return Err(GroupError::IllFormed("order is not closed under multiplication".into()));
                    }
                }
            }
            (module, add_gens)
        }
    };
    if order_gens.is_empty() {
        order_gens.push(fmat::identity(n));
    }
    let ideal = match &spec.ideal {
        IdealSpec::Congruence { c } => {
            if *c > r.m() {
                return Err(GroupError::IllFormed(format!("congruence exponent {c} exceeds precision {}", r.m())));
            }
            match &order {
                Module::Entrywise(e) => Module::Entrywise(e.iter().map(|&x| x.max(*c)).collect()),
                Module::Set(s) => Module::Set(
                    s.iter()
                        .copied()
                        .filter(|&k| fmat::from_key(r, k, n * n).iter().all(|&x| r.valuation(x) >= *c))
                        .collect(),
                ),
            }
        }
        IdealSpec::Explicit { generators } => {
            let gens: Vec<Mat> = generators.iter().map(|g| integer_matrix(r, n, g)).collect::<Result<_, _>>()?;
            let add_gens = span_generators(r, &gens);
            let ideal = Module::Set(additive_closure(r, &add_gens, n)?);
            for i in &add_gens {
                if !order.contains(r, i) {
                    return Err(GroupError::IllFormed("ideal is not contained in the order".into()));
                }
                for a in &order_gens {
                    if !ideal.contains(r, &fmat::mul(r, a, i)) || !ideal.contains(r, &fmat::mul(r, i, a)) {
                        return Err(GroupError::IllFormed("ideal is not two-sided".into()));
                    }
                }
            }
            ideal
        }
    };
    Ok(BuiltModel { order, ideal })
}

fn unit_gens(n: usize) -> Vec<Mat> {
    let mut v = Vec::new();
    for i in 0..n {
        for j in 0..n {
            v.push(fmat::unit(n, i, j));
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_json_shapes() {
        let s: IntegralModelSpec =
            serde_json::from_str(r#"{"n":2,"order":{"type":"parahoric","breakpoints":[1]},"ideal":{"type":"congruence","c":1}}"#)
                .unwrap();
        assert_eq!(s, IntegralModelSpec::parahoric(2, vec![1], 1));
        let e: IntegralModelSpec = serde_json::from_str(
            r#"{"n":2,"order":{"type":"full"},"ideal":{"type":"explicit","generators":[[[2,0],[0,0]]]}}"#,
        )
        .unwrap();
        assert!(matches!(e.ideal, IdealSpec::Explicit { .. }));
    }

    #[test]
    fn explicit_upper_triangular_order() {
        let r = FiniteRing::new(2, 1, 1).unwrap();
        let spec = IntegralModelSpec {
            n: 2,
            order: OrderSpec::Explicit { generators: vec![vec![vec![1, 0], vec![0, 0]], vec![vec![0, 1], vec![0, 0]], vec![vec![0, 0], vec![0, 1]]] },
            ideal: IdealSpec::Congruence { c: 1 },
        };
        let b = build_model(&spec, &r).unwrap();
        assert_eq!(b.order.enumerate(&r, 2).unwrap().len(), 8);
    }

    #[test]
    fn invalid_models_are_rejected() {
        let r = FiniteRing::new(2, 2, 1).unwrap();
        let no_one = IntegralModelSpec {
            n: 2,
            order: OrderSpec::Explicit { generators: vec![vec![vec![1, 0], vec![0, 0]]] },
            ideal: IdealSpec::Congruence { c: 1 },
        };
        assert!(matches!(build_model(&no_one, &r), Err(GroupError::IllFormed(_))));
        let one_sided = IntegralModelSpec {
            n: 2,
            order: OrderSpec::Full,
            ideal: IdealSpec::Explicit { generators: vec![vec![vec![1, 0], vec![0, 0]]] },
        };
        assert!(matches!(build_model(&one_sided, &r), Err(GroupError::IllFormed(_))));
        let deep = IntegralModelSpec::full(2, 3);
        assert!(build_model(&deep, &r).is_err());
        let bad_bp = IntegralModelSpec::parahoric(2, vec![2], 1);
        assert!(build_model(&bad_bp, &r).is_err());
    }
}

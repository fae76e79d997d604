use crate::poset::StrataPoset;
use lk_exact::{Kernel, Q};
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};

/// `W_Z` inside `⊕_{Z'} W_{Z'}`, the sum over the covers `Z'` of `Z`, in
/// block coordinates (block of `Z'` = the basis coordinates of `W_{Z'}`).
#[derive(Clone, Debug)]
pub struct WSpace {
    pub source: Vec<usize>,
    pub offsets: Vec<usize>,
    pub block: HashMap<usize, usize>,
    pub kernel: Kernel,
}

impl WSpace {
    pub fn dim(&self) -> usize {
        self.kernel.dim()
    }

    pub fn source_dim(&self) -> usize {
        self.kernel.ambient_dim()
    }

    /// Basis vector `b` split into `(Z', coordinates in W_{Z'})` blocks.
    pub fn blocks(&self, b: usize, w: &WAssignment) -> Vec<(usize, Vec<(usize, Q)>)> {
        let mut out: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
        for (col, x) in self.kernel.vector(b) {
            let i = self.offsets.partition_point(|&o| o <= col) - 1;
            let z = self.source[i];
            debug_assert!(col - self.offsets[i] < w.dim(z));
            out.entry(z).or_default().push((col - self.offsets[i], x));
        }
        out.into_iter().collect()
    }
}

#[derive(Clone, Debug)]
pub struct WAssignment {
    spaces: Vec<WSpace>,
}

impl WAssignment {
    pub fn space(&self, e: usize) -> &WSpace {
        &self.spaces[e]
    }

    pub fn dim(&self, e: usize) -> usize {
        self.spaces[e].dim()
    }

    /// Transition `W_Z → W_{Z'}` for a cover `Z'`: the `Z'` block of each
    /// basis vector.
    pub fn transition(&self, z: usize, cover: usize) -> Vec<Vec<(usize, Q)>> {
        let s = &self.spaces[z];
        let Some(&i) = s.block.get(&cover) else {
            return vec![vec![]; s.dim()];
        };
        let (lo, hi) = (s.offsets[i], s.offsets[i] + self.dim(cover));
        (0..s.dim())
            .map(|b| s.kernel.vector(b).into_iter().filter(|(c, _)| (lo..hi).contains(c)).map(|(c, x)| (c - lo, x)).collect())
            .collect()
    }
}

/// `W_Z` for every stratum, lowest codimension first. The ambient stratum
/// and codimension-1 strata get `Q`.
pub fn compute_w_spaces(poset: &StrataPoset) -> WAssignment {
    let n = poset.len();
    let mut spaces: Vec<Option<WSpace>> = vec![None; n];
    for e in poset.by_codim() {
        let source: Vec<usize> = if e == 0 { vec![] } else { poset.covers(e).to_vec() };
        let mut offsets = Vec::with_capacity(source.len());
        let mut acc = 0;
        for &z in &source {
            offsets.push(acc);
            acc += spaces[z].as_ref().expect("covers come first").dim();
        }
        let block: HashMap<usize, usize> = source.iter().enumerate().map(|(i, &z)| (z, i)).collect();
        let kernel = if e == 0 {
            Kernel::full(1)
        } else {
            // Rows: one per coordinate of W_{Z''}, Z'' two steps up.
            let mut rows: BTreeMap<(usize, usize), Vec<Q>> = BTreeMap::new();
            for (i, &z) in source.iter().enumerate().filter(|(_, &z)| z != 0) {
                let sz = spaces[z].as_ref().unwrap();
                for b in 0..sz.dim() {
                    for (col, x) in sz.kernel.vector(b) {
                        let j = sz.offsets.partition_point(|&o| o <= col) - 1;
                        let key = (sz.source[j], col - sz.offsets[j]);
                        rows.entry(key).or_insert_with(|| vec![Q::zero(); acc])[offsets[i] + b] += x;
                    }
                }
            }
            let rows: Vec<Vec<Q>> = rows.into_values().collect();
            Kernel::of(&rows, acc)
        };
        spaces[e] = Some(WSpace { source, offsets, block, kernel });
    }
    WAssignment { spaces: spaces.into_iter().map(Option::unwrap).collect() }
}

/// Dimension of the space of functions on maximal chains
/// `Z = Z_c ⊂ Z_{c−1} ⊂ ⋯ ⊂ Z_1` that vanish on every single-step
/// replacement sum. Computed without the inductive kernels.
pub fn chain_model_dim(poset: &StrataPoset, e: usize) -> usize {
    fn chains(poset: &StrataPoset, e: usize) -> Vec<Vec<usize>> {
        if poset.codim(e) <= 1 {
            return vec![vec![e]];
        }
        let mut out = Vec::new();
        for &c in poset.covers(e) {
            for mut ch in chains(poset, c) {
                ch.push(e);
                out.push(ch);
            }
        }
        out
    }
    if e == 0 {
        return 1;
    }
    let all = chains(poset, e);
    let len = poset.codim(e);
    let mut rows = Vec::new();
    for pos in 0..len - 1 {
        let mut groups: BTreeMap<Vec<usize>, Vec<(usize, i64)>> = BTreeMap::new();
        for (i, ch) in all.iter().enumerate() {
            let mut rest = ch.clone();
            rest.remove(pos);
            groups.entry(rest).or_default().push((i, 1));
        }
        rows.extend(groups.into_values());
    }
    Kernel::of_sparse_int(&rows, all.len()).dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{build_summand_poset, StratumInput};

    /// In a chain every transition map into codimension `c−2` is the
    /// identity of `Q`, so `W` vanishes from codimension 2 on.
    #[test]
    fn chain_poset() {
        let items: Vec<StratumInput> = (1..=4)
            .map(|c| StratumInput { id: format!("z{c}"), codim: c, contains: if c < 4 { vec![format!("z{}", c + 1)] } else { vec![] } })
            .collect();
        let p = StrataPoset::from_input(&items).unwrap();
        let w = compute_w_spaces(&p);
        let dims: Vec<usize> = (0..p.len()).map(|e| w.dim(e)).collect();
        assert_eq!(dims, vec![1, 1, 0, 0, 0]);
        assert!((0..p.len()).all(|e| chain_model_dim(&p, e) == w.dim(e)));
        assert!(crate::star::check_star(&p, &w).holds);
    }

    #[test]
    fn summand_dims() {
        for (p, dim) in [(2u64, 2usize), (3, 3)] {
            let poset = build_summand_poset(2, p, 1).unwrap();
            let w = compute_w_spaces(&poset);
            let top = poset.elem("H2.0").unwrap();
            assert_eq!(w.dim(top), dim);
            assert_eq!(chain_model_dim(&poset, top), dim);
            assert_eq!(w.transition(top, poset.covers(top)[0]).len(), dim);
        }
    }
}

use crate::error::StrataError;
use lk_characters::summands::SummandLattice;
use lk_ring::FiniteRing;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

/// Id of the formal codimension-0 stratum.
pub const AMBIENT: &str = "ambient";

/// One entry of the JSON poset format. `contains` lists strata lying in the
/// closure of this one; they must have larger codimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumInput {
    pub id: String,
    pub codim: usize,
    #[serde(default)]
    pub contains: Vec<String>,
}

/// Summand posets remember which summand each stratum is.
#[derive(Debug)]
pub struct SummandData {
    pub lattice: SummandLattice,
    /// Element of the poset for `(rank, index)`.
    pub offsets: Vec<usize>,
}

impl SummandData {
    pub fn elem(&self, rank: usize, i: usize) -> usize {
        self.offsets[rank] + i
    }

    pub fn summand_of(&self, e: usize) -> (usize, usize) {
        let rank = self.offsets.partition_point(|&o| o <= e) - 1;
        (rank, e - self.offsets[rank])
    }
}

/// Element 0 is the ambient stratum. `up[e]` holds every stratum whose
/// closure strictly contains `e`, ambient included.
#[derive(Debug)]
pub struct StrataPoset {
    ids: Vec<String>,
    codim: Vec<usize>,
    up: Vec<BTreeSet<usize>>,
    covers: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
    summands: Option<SummandData>,
}

impl StrataPoset {
    pub fn from_input(items: &[StratumInput]) -> Result<StrataPoset, StrataError> {
        let mut ids = vec![AMBIENT.to_string()];
        let mut codim = vec![0];
        let mut index = HashMap::from([(AMBIENT.to_string(), 0)]);
        for s in items {
            if s.codim == 0 {
                return Err(StrataError::Invalid(format!("stratum {} has codimension 0", s.id)));
            }
            if index.insert(s.id.clone(), ids.len()).is_some() {
                return Err(StrataError::Invalid(format!("duplicate stratum id {}", s.id)));
            }
            ids.push(s.id.clone());
            codim.push(s.codim);
        }
        let mut direct_up: Vec<Vec<usize>> = vec![vec![]; ids.len()];
        for (e, s) in items.iter().enumerate().map(|(i, s)| (i + 1, s)) {
            for c in &s.contains {
                let &small = index.get(c).ok_or_else(|| StrataError::UnknownStratum(c.clone()))?;
                if small == 0 || codim[small] <= codim[e] {
                    return Err(StrataError::Invalid(format!(
                        "{} contains {} but codimension does not increase",
                        s.id, c
                    )));
                }
                direct_up[small].push(e);
            }
        }
        Self::close(ids, codim, index, direct_up, None)
    }

    fn close(
        ids: Vec<String>,
        codim: Vec<usize>,
        index: HashMap<String, usize>,
        direct_up: Vec<Vec<usize>>,
        summands: Option<SummandData>,
    ) -> Result<StrataPoset, StrataError> {
        let n = ids.len();
        // Codimension strictly drops along `direct_up`, so processing in
        // increasing codimension sees every superset's closure first.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&e| codim[e]);
        let mut up: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &e in &order {
            if e == 0 {
                continue;
            }
            let mut set = BTreeSet::from([0]);
            for &b in &direct_up[e] {
                set.insert(b);
                set.extend(up[b].iter().copied());
            }
            up[e] = set;
        }
        let covers: Vec<Vec<usize>> =
            (0..n).map(|e| up[e].iter().copied().filter(|&b| codim[b] + 1 == codim[e]).collect()).collect();
        for e in 1..n {
            for &b in &up[e] {
                if codim[e] >= codim[b] + 2 && !covers[e].iter().any(|&c| up[c].contains(&b)) {
                    return Err(StrataError::Cover { small: ids[e].clone(), big: ids[b].clone() });
                }
            }
        }
        Ok(StrataPoset { ids, codim, up, covers, index, summands })
    }

    /// Number of strata, ambient included.
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.len() == 1
    }

    pub fn id(&self, e: usize) -> &str {
        &self.ids[e]
    }

    pub fn elem(&self, id: &str) -> Result<usize, StrataError> {
        self.index.get(id).copied().ok_or_else(|| StrataError::UnknownStratum(id.to_string()))
    }

    pub fn codim(&self, e: usize) -> usize {
        self.codim[e]
    }

    pub fn max_codim(&self) -> usize {
        self.codim.iter().copied().max().unwrap_or(0)
    }

    /// Strata strictly containing `e`.
    pub fn up(&self, e: usize) -> &BTreeSet<usize> {
        &self.up[e]
    }

    /// Strata of codimension `c(e) − 1` containing `e`, sorted.
    pub fn covers(&self, e: usize) -> &[usize] {
        &self.covers[e]
    }

    /// Whether `small ⊆ big`.
    pub fn le(&self, small: usize, big: usize) -> bool {
        small == big || self.up[small].contains(&big)
    }

    /// Strata containing a point of the open part of `e`, of codimension
    /// `k`.
    pub fn containing(&self, e: usize, k: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.up[e].iter().copied().filter(|&b| self.codim[b] == k).collect();
        if self.codim[e] == k {
            out.push(e);
        }
        out
    }

    /// Elements in increasing codimension (ties by element order).
    pub fn by_codim(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&e| (self.codim[e], e));
        order
    }

    pub fn summands(&self) -> Option<&SummandData> {
        self.summands.as_ref()
    }

    pub fn to_input(&self) -> Vec<StratumInput> {
        (1..self.len())
            .map(|e| StratumInput {
                id: self.ids[e].clone(),
                codim: self.codim[e],
                contains: (1..self.len()).filter(|&s| self.up[s].contains(&e)).map(|s| self.ids[s].clone()).collect(),
            })
            .collect()
    }
}

/// Strata `M^H` for nonzero free summands `H ⊆ (Z/p^m)^n`, of codimension
/// `rank H`, with `M^{H_1} ⊆ M^{H_2}` iff `H_2 ⊆ H_1`. The zero summand is
/// the ambient stratum. Ids are `H<rank>.<index>`.
pub fn build_summand_poset(n: usize, p: u64, m: u32) -> Result<StrataPoset, StrataError> {
    let ring = Arc::new(FiniteRing::new(p, m, 1)?);
    let lattice = SummandLattice::new(ring, n)?;
    let mut offsets = Vec::with_capacity(n + 1);
    let mut ids = Vec::new();
    let mut codim = Vec::new();
    for rank in 0..=n {
        offsets.push(ids.len());
        for i in 0..lattice.count(rank) {
            ids.push(if rank == 0 { AMBIENT.to_string() } else { format!("H{rank}.{i}") });
            codim.push(rank);
        }
    }
    let mut direct_up = vec![vec![]; ids.len()];
    for rank in 1..=n {
        for i in 0..lattice.count(rank) {
            direct_up[offsets[rank] + i] = lattice.below(rank, i).iter().map(|&s| offsets[rank - 1] + s).collect();
        }
    }
    let index = ids.iter().enumerate().map(|(e, id)| (id.clone(), e)).collect();
    StrataPoset::close(ids, codim, index, direct_up, Some(SummandData { lattice, offsets }))
}

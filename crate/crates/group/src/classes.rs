use crate::quotient::QuotientGroup;
use serde::Serialize;
use std::collections::VecDeque;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    Conjugacy,
    SigmaConjugacy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    /// Least element id (hence lexicographically least matrix) of the class.
    pub rep: u32,
    pub size: usize,
    pub centralizer: usize,
}

/// Orbits of a subgroup `H` acting on itself by conjugation, or of the whole
/// group acting by sigma-conjugation.
#[derive(Clone, Debug)]
pub struct ClassTable {
    pub kind: ClassKind,
    pub group_size: usize,
    pub classes: Vec<ClassEntry>,
    class_of: Vec<u32>,
}

pub const NOT_IN_GROUP: u32 = u32::MAX;

impl ClassTable {
    /// Class index of element `a`, or `None` if `a` is outside the acting set.
    pub fn class_of(&self, a: u32) -> Option<u32> {
        let c = self.class_of[a as usize];
        (c != NOT_IN_GROUP).then_some(c)
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Members of class `c` in id order.
    pub fn members(&self, c: u32) -> Vec<u32> {
        (0..self.class_of.len() as u32).filter(|&a| self.class_of[a as usize] == c).collect()
    }

    pub fn orbit_stabilizer_holds(&self) -> bool {
        self.classes.iter().all(|e| e.size * e.centralizer == self.group_size)
            && self.classes.iter().map(|e| e.size).sum::<usize>() == self.group_size
    }
}

fn orbits(q: &QuotientGroup, elements: &[u32], gens: &[u32], act: impl Fn(u32, u32) -> u32, kind: ClassKind) -> ClassTable {
    let mut class_of = vec![NOT_IN_GROUP; q.size()];
    let mut classes = Vec::new();
    for &x in elements {
        if class_of[x as usize] != NOT_IN_GROUP {
            continue;
        }
        let c = classes.len() as u32;
        class_of[x as usize] = c;
        let mut size = 1;
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for &g in gens {
                let z = act(g, y);
                if class_of[z as usize] == NOT_IN_GROUP {
                    class_of[z as usize] = c;
                    size += 1;
                    queue.push_back(z);
                }
            }
        }
        classes.push(ClassEntry { rep: x, size, centralizer: elements.len() / size });
    }
    ClassTable { kind, group_size: elements.len(), classes, class_of }
}

/// Conjugacy classes of the subgroup with the given elements (sorted ids).
pub fn conjugacy_classes(q: &QuotientGroup, elements: &[u32]) -> ClassTable {
    let gens = q.generators_of(elements);
    orbits(q, elements, &gens, |g, y| q.conj(g, y), ClassKind::Conjugacy)
}

/// Orbits of `x ↦ g^{-1} x g^σ` on the whole group.
pub fn sigma_classes(q: &QuotientGroup) -> ClassTable {
    let all: Vec<u32> = (0..q.size() as u32).collect();
    let gens = q.generators_of(&all);
    orbits(q, &all, &gens, |g, y| q.sigma_conj(g, y), ClassKind::SigmaConjugacy)
}

/// Conjugacy classes of the sigma-fixed subgroup and sigma-conjugacy
/// classes of the whole group.
pub fn class_tables(q: &QuotientGroup) -> (ClassTable, ClassTable) {
    (conjugacy_classes(q, &q.sigma_fixed()), sigma_classes(q))
}

/// Recounts every (sigma-)centralizer by brute force over the acting group.
pub fn certify_centralizers(q: &QuotientGroup, t: &ClassTable, acting: &[u32]) -> bool {
    t.classes.iter().all(|e| {
        let stab = acting
            .iter()
            .filter(|&&g| match t.kind {
                ClassKind::Conjugacy => q.mul(e.rep, g) == q.mul(g, e.rep),
                ClassKind::SigmaConjugacy => q.mul(e.rep, q.sigma(g)) == q.mul(g, e.rep),
            })
            .count();
        stab == e.centralizer
    })
}

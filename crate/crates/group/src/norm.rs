use crate::classes::ClassTable;
use crate::error::GroupError;
use crate::quotient::QuotientGroup;
use lk_ring::fmat::{self, Mat};
use lk_ring::limits;
use serde::Serialize;
use std::collections::HashSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormClassEntry {
    pub sigma_class: u32,
    /// A member of the sigma-class whose norm is sigma-fixed.
    pub member: u32,
    pub norm: u32,
    /// Index into the conjugacy table of the sigma-fixed subgroup.
    pub conj_class: u32,
    pub sigma_centralizer: usize,
    pub centralizer: usize,
    pub via_fallback: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormCertificate {
    pub well_defined: bool,
    pub bijective: bool,
    pub centralizers_match: bool,
}

impl NormCertificate {
    pub fn holds(&self) -> bool {
        self.well_defined && self.bijective && self.centralizers_match
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NormMap {
    pub entries: Vec<NormClassEntry>,
    pub certificate: NormCertificate,
}

impl NormMap {
    /// Conjugacy class (in the sigma-fixed subgroup) attached to a
    /// sigma-class.
    pub fn image(&self, sigma_class: u32) -> u32 {
        self.entries[sigma_class as usize].conj_class
    }
}

/// The map from sigma-conjugacy classes of `q` to conjugacy classes of its
/// sigma-fixed subgroup, `[δ] ↦ [N x]` for a member `x` with sigma-fixed norm.
pub fn class_norm_map(q: &QuotientGroup, conj: &ClassTable, sig: &ClassTable) -> Result<NormMap, GroupError> {
    let nc = sig.len();
    let mut found: Vec<Option<(u32, u32)>> = vec![None; nc];
    let mut well_defined = true;
    let mut images: Vec<Option<u32>> = vec![None; nc];
    for x in 0..q.size() as u32 {
        let nx = q.norm_element(x);
        if q.sigma(nx) != nx {
            continue;
        }
        let s = sig.class_of(x).expect("sigma classes cover the group") as usize;
        let c = conj.class_of(nx).expect("sigma-fixed norms lie in the fixed subgroup");
        match images[s] {
            None => {
                images[s] = Some(c);
                found[s] = Some((x, nx));
            }
            Some(c0) if c0 != c => well_defined = false,
            _ => {}
        }
    }
    let mut via_fallback = vec![false; nc];
    if found.iter().any(Option::is_none) {
        let hit: HashSet<u32> = images.iter().flatten().copied().collect();
        for (ci, e) in conj.classes.iter().enumerate() {
            if hit.contains(&(ci as u32)) {
                continue;
            }
            if let Some(d) = solve_norm_equation(q, e.rep)? {
                let s = sig.class_of(d).unwrap() as usize;
                if found[s].is_none() {
                    found[s] = Some((d, e.rep));
                    images[s] = Some(ci as u32);
                    via_fallback[s] = true;
                }
            }
        }
    }
    let mut entries = Vec::with_capacity(nc);
    for s in 0..nc {
        let Some((member, norm)) = found[s] else {
            return Err(GroupError::NoFixedNormMember(s as u32));
        };
        let c = images[s].unwrap();
        entries.push(NormClassEntry {
            sigma_class: s as u32,
            member,
            norm,
            conj_class: c,
            sigma_centralizer: sig.classes[s].centralizer,
            centralizer: conj.classes[c as usize].centralizer,
            via_fallback: via_fallback[s],
        });
    }
    let distinct: HashSet<u32> = entries.iter().map(|e| e.conj_class).collect();
    let bijective = distinct.len() == nc && nc == conj.len();
    let centralizers_match = entries.iter().all(|e| e.sigma_centralizer == e.centralizer);
    Ok(NormMap { entries, certificate: NormCertificate { well_defined, bijective, centralizers_match } })
}

/// Solves `N δ = γ` by brute force in the commutative subring `O_L[γ]`
/// generated by a lift of the sigma-fixed element `γ`. Returns the coset of
/// a solution.
pub fn solve_norm_equation(q: &QuotientGroup, gamma: u32) -> Result<Option<u32>, GroupError> {
    let r = q.ring();
    let n = q.n();
    let g = q.rep(gamma).clone();
    let mut powers: Vec<Mat> = vec![fmat::identity(n)];
    for _ in 1..n {
        let last = powers.last().unwrap();
        powers.push(fmat::mul(r, last, &g));
    }
    let pm = r.pm() as u32;
    let gens: Vec<Mat> = (0..r.r())
        .flat_map(|t| powers.iter().map(move |a| (t, a)))
        .map(|(t, a)| fmat::scale(r, a, pm.pow(t as u32)))
        .collect();
    let zero = vec![0u32; n * n];
    let mut seen: HashSet<u128> = HashSet::from([fmat::key(r, &zero)]);
    let mut frontier = vec![zero];
    let mut ring_elems = Vec::new();
    while let Some(a) = frontier.pop() {
        ring_elems.push(a.clone());
        for b in &gens {
            let c = fmat::add(r, &a, b);
            if seen.insert(fmat::key(r, &c)) {
                limits::check("norm-equation subring", seen.len() as u128)?;
                frontier.push(c);
            }
        }
    }
    ring_elems.sort_by_key(|a| fmat::key(r, a));
    for d in ring_elems {
        let Some(id) = q.id_of(&d) else { continue };
        let mut acc = d.clone();
        let mut s = d;
        for _ in 1..r.r() {
            s = fmat::frob(r, &s);
            acc = fmat::mul(r, &acc, &s);
        }
        if q.id_of(&acc) == Some(gamma) {
            return Ok(Some(id));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::class_tables;
    use crate::quotient::general_linear;

    #[test]
    fn trivial_extension_gives_identity_map() {
        let q = general_linear(2, 3, 1, 1).unwrap();
        let (c, s) = class_tables(&q);
        let nm = class_norm_map(&q, &c, &s).unwrap();
        assert!(nm.certificate.holds());
        for e in &nm.entries {
            assert_eq!(c.classes[e.conj_class as usize].rep, s.classes[e.sigma_class as usize].rep);
        }
    }

    #[test]
    fn gl2_f4_to_gl2_f2() {
        let q = general_linear(2, 2, 1, 2).unwrap();
        let (c, s) = class_tables(&q);
        let nm = class_norm_map(&q, &c, &s).unwrap();
        assert_eq!(nm.entries.len(), 3);
        assert!(nm.certificate.holds());
    }

    #[test]
    fn units_of_gr_4_2() {
        let q = general_linear(1, 2, 2, 2).unwrap();
        let (c, s) = class_tables(&q);
        let nm = class_norm_map(&q, &c, &s).unwrap();
        // (Z/4)^× = {1, 3}
        assert_eq!(c.len(), 2);
        assert!(nm.certificate.holds());
    }

    #[test]
    fn fallback_solver_reaches_every_class() {
        let q = general_linear(2, 2, 1, 2).unwrap();
        let (c, s) = class_tables(&q);
        let nm = class_norm_map(&q, &c, &s).unwrap();
        for (ci, e) in c.classes.iter().enumerate() {
            let d = solve_norm_equation(&q, e.rep).unwrap().expect("norm is surjective on Z_γ");
            assert_eq!(q.norm_element(d), e.rep);
            assert_eq!(nm.image(s.class_of(d).unwrap()), ci as u32);
        }
    }
}

use lk_exact::{q, Q};
use lk_orbital::*;
use lk_padic::{Entry, PadicMatrix};
use lk_ring::GaloisRing;
use std::collections::BTreeSet;
use std::sync::Arc;

fn ints(p: u64, rows: &[Vec<i64>]) -> PadicMatrix {
    PadicMatrix::from_int_rows(p, 1, 24, rows).unwrap()
}

fn over(p: u64, r: usize, rows: &[Vec<Vec<u64>>]) -> PadicMatrix {
    let ring = Arc::new(GaloisRing::new(p, 24, r).unwrap());
    let e = rows.iter().flatten().map(|c| ring.from_coeffs(c).unwrap()).collect();
    PadicMatrix::new(ring, rows.len(), 0, e).unwrap()
}

#[test]
fn depth_zero_is_the_standard_lattice() {
    for (n, p, r) in [(1usize, 2u64, 1usize), (2, 3, 1), (3, 2, 2)] {
        let all = enumerate_cosets(n, p, r, 0).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].scale, 0);
        assert_eq!(all[0].exps, vec![0; n]);
    }
}

type Subgroup = BTreeSet<(u64, u64)>;

fn span(gens: &[(u64, u64)], modulus: u64) -> Subgroup {
    let (u, v) = (gens[0], gens[1]);
    let mut s = Subgroup::new();
    for i in 0..modulus {
        for j in 0..modulus {
            s.insert(((i * u.0 + j * v.0) % modulus, (i * u.1 + j * v.1) % modulus));
        }
    }
    s
}

/// Subgroups of `(Z/p^k)^2`, each generated by two elements.
fn subgroups(modulus: u64) -> BTreeSet<Subgroup> {
    let els: Vec<(u64, u64)> = (0..modulus).flat_map(|a| (0..modulus).map(move |b| (a, b))).collect();
    let mut out = BTreeSet::new();
    for &u in &els {
        for &v in &els {
            out.insert(span(&[u, v], modulus));
        }
    }
    out
}

#[test]
fn box_matches_subgroup_lattice() {
    for (p, depth) in [(2u64, 1u32), (3, 1), (2, 2)] {
        let modulus = p.pow(2 * depth);
        let lats = enumerate_cosets(2, p, 1, depth).unwrap();
        let oracle = subgroups(modulus);
        assert_eq!(lats.len(), oracle.len(), "p={p} D={depth}");
        // p^D L as a subgroup of (Z/p^{2D})^2
        let mut seen = BTreeSet::new();
        for l in &lats {
            let s = p.pow((l.scale + depth as i64) as u32);
            let col = |j: usize| ((l.basis[0][j][0] * s) % modulus, (l.basis[1][j][0] * s) % modulus);
            seen.insert(span(&[col(0), col(1)], modulus));
        }
        assert_eq!(seen, oracle);
    }
    assert_eq!(subgroups(4).len(), 15);
}

#[test]
fn neighbours_of_the_standard_lattice() {
    for (p, r, expect) in [(3u64, 1usize, 4usize), (2, 1, 3), (2, 2, 5)] {
        let lats = enumerate_cosets(2, p, r, 1).unwrap();
        let k = lats.iter().filter(|l| l.elementary_divisors(p, r).unwrap() == vec![0, 1]).count();
        assert_eq!(k, expect, "p={p} r={r}");
    }
}

#[test]
fn documented_volumes() {
    for (n, p, r) in [(2usize, 2u64, 1usize), (3, 2, 1), (2, 2, 2), (2, 3, 1), (3, 3, 1), (1, 5, 1), (2, 3, 2)] {
        let v = double_coset_volume(n, p, r).unwrap();
        assert_eq!(v, volume_closed_form(n, p, r), "n={n} p={p} r={r}");
    }
    assert_eq!(double_coset_volume(2, 2, 1).unwrap(), 3);
    assert_eq!(double_coset_volume(3, 2, 1).unwrap(), 7);
    assert_eq!(double_coset_volume(2, 2, 2).unwrap(), 5);
}

#[test]
fn central_unit() {
    let f = SupportSpec::indicator(vec![0, 0]);
    let out = orbital_integral(&f, &ints(3, &[vec![2, 0], vec![0, 2]]), 2).unwrap();
    assert!(out.central && out.stable);
    assert_eq!(out.value, Some(q(1)));
}

#[test]
fn elliptic_edge_flip() {
    let f = SupportSpec::unit(2);
    let g = ints(2, &[vec![0, 2], vec![1, 0]]);
    let out = orbital_integral(&f, &g, 2).unwrap();
    assert_eq!(out.elliptic, Some(true));
    assert!(out.stable);
    assert_eq!(out.value, Some(q(2)));
    let deeper = depth_sums(&f, &g, Mode::Plain, 4).unwrap();
    assert!(deeper.iter().skip(1).all(|s| s.sum == q(2)));
    assert_eq!(deeper[4].contributing, 2);
}

#[test]
fn hyperbolic_is_unstable() {
    let f = SupportSpec::unit(2);
    let g = ints(2, &[vec![1, 0], vec![0, 2]]);
    let out = orbital_integral(&f, &g, 2).unwrap();
    assert!(!out.stable);
    assert_eq!(out.value, None);
    assert_eq!(out.status(), "unstable");
    // the apartment of the diagonal torus: 2d + 1 classes within distance d
    for s in depth_sums(&f, &g, Mode::Plain, 4).unwrap() {
        assert_eq!(s.sum, q(2 * s.depth as i64 + 1));
    }
}

#[test]
fn twisted_rank_one() {
    let phi = SupportSpec::indicator(vec![1]);
    for r in 1..=3usize {
        for (x, expect) in [(2u64, 1i64), (6, 1), (4, 0), (1, 0), (3, 0)] {
            let mut c = vec![0; r];
            c[0] = x;
            let out = twisted_orbital_integral(&phi, &over(2, r, &[vec![c]]), 1).unwrap();
            assert_eq!(out.value, Some(q(expect)), "r={r} δ={x}");
        }
    }
}

#[test]
fn twisted_reduces_to_plain_at_r_one() {
    let f = SupportSpec::new(vec![
        SupportComponent { divisors: vec![0, 1], residues: None, value: q(3) },
        SupportComponent { divisors: vec![1, 1], residues: None, value: q(-1) },
        SupportComponent { divisors: vec![0, 2], residues: None, value: q(5) },
    ])
    .unwrap();
    for p in [2u64, 3] {
        let p_ = p as i64;
        for rows in [
            vec![vec![0, p_], vec![1, 0]],
            vec![vec![1, 0], vec![0, p_]],
            vec![vec![0, p_ * p_], vec![1, p_]],
            vec![vec![0, -p_ * p_], vec![1, -p_]],
            vec![vec![p_, 1], vec![1, 0]],
        ] {
            let g = ints(p, &rows);
            let a = depth_sums(&f, &g, Mode::Plain, 3).unwrap();
            let b = depth_sums(&f, &g, Mode::Twisted, 3).unwrap();
            assert_eq!(a, b, "p={p} rows={rows:?}");
        }
    }
}

fn x_coeffs(r: usize) -> Vec<u64> {
    let mut c = vec![0; r];
    c[1] = 1;
    c
}

fn int(r: usize, v: i64, p: u64) -> Vec<u64> {
    let mut c = vec![0; r];
    c[0] = v.rem_euclid(p.pow(24) as i64) as u64;
    c
}

#[test]
fn unit_level_matching() {
    // δ = [[0, 2x], [1, 0]] over Q_4: Nδ ~ diag(2x, 2σx), charpoly T² + 2T + 4
    let r = 2;
    let two_x: Vec<u64> = x_coeffs(r).iter().map(|c| c * 2).collect();
    let delta = over(2, r, &[vec![int(r, 0, 2), two_x], vec![int(r, 1, 2), int(r, 0, 2)]]);
    let gamma = ints(2, &[vec![0, -4], vec![1, -2]]);
    let f = unit_transfer(2, 2, r).unwrap();
    let phi = SupportSpec::unit(2);
    let rep = match_report(&f, &phi, &[(gamma.clone(), delta.clone())], 2).unwrap();
    assert!(rep.all_equal, "{rep:?}");
    assert_eq!(rep.rows[0].orbital.value, Some(q(2)));
    assert_eq!(rep.rows[0].orbital.elliptic, Some(true));
    assert_eq!(rep.rows[0].twisted.elliptic, Some(true));
    // r = 1: f = φ and γ = δ
    let g = ints(3, &[vec![0, 3], vec![1, 0]]);
    let rep = match_report(&SupportSpec::unit(2), &SupportSpec::unit(2), &[(g.clone(), g)], 2).unwrap();
    assert!(rep.all_equal);
    // γ not conjugate to Nδ
    let bad = ints(2, &[vec![0, 4], vec![1, 0]]);
    assert!(matches!(match_report(&f, &phi, &[(bad, delta)], 2), Err(OrbitalError::Mismatch(_))));
}

#[test]
fn matching_for_base_delta() {
    // δ ∈ GL_2(Q_p) Eisenstein with nonzero trace, so Nδ = δ^r stays elliptic
    for (p, r, rows) in [
        (2u64, 3usize, vec![vec![0i64, 2], vec![1, 0]]),
        (3, 2, vec![vec![0, -3], vec![1, 3]]),
        (2, 2, vec![vec![0, -2], vec![1, 2]]),
        (3, 3, vec![vec![0, -3], vec![1, 3]]),
    ] {
        let delta = over(p, r, &rows.iter().map(|row| row.iter().map(|&v| int(r, v, p)).collect()).collect::<Vec<_>>());
        let nd = delta.norm().unwrap();
        let gamma_rows: Vec<Vec<i64>> =
            (0..2).map(|i| (0..2).map(|j| nd.entry(i, j)[0] as i64).collect()).collect();
        let gamma = PadicMatrix::from_int_rows(p, 1, 24, &gamma_rows).unwrap();
        let f = unit_transfer(2, p, r).unwrap();
        let rep = match_report(&f, &SupportSpec::unit(2), &[(gamma, delta)], 2).unwrap();
        let row = &rep.rows[0];
        assert_eq!(row.orbital.elliptic, Some(true));
        assert!(row.orbital.stable && row.twisted.stable, "p={p} r={r}");
        assert!(row.equal, "p={p} r={r}: O = {:?}, TO = {:?}", row.orbital.value, row.twisted.value);
    }
}

#[test]
fn residue_sets_split_the_coset() {
    // K diag(2,1) K reduces mod 2 onto the nine nonzero singular matrices
    let mut singular = Vec::new();
    for a in 0..2i64 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    if (a * d - b * c) % 2 == 0 && a + b + c + d > 0 {
                        singular.push(vec![vec![Entry::Int(a), Entry::Int(b)], vec![Entry::Int(c), Entry::Int(d)]]);
                    }
                }
            }
        }
    }
    assert_eq!(singular.len(), 9);
    let g = ints(2, &[vec![0, 2], vec![1, 0]]);
    let whole = SupportSpec::new(vec![SupportComponent {
        divisors: vec![0, 1],
        residues: Some(ResidueSet { m: 1, matrices: singular.clone() }),
        value: q(1),
    }])
    .unwrap();
    assert_eq!(orbital_integral(&whole, &g, 2).unwrap().value, Some(q(2)));
    let (s1, s2) = singular.split_at(4);
    let part = |s: &[Vec<Vec<Entry>>], v: i64| SupportComponent {
        divisors: vec![0, 1],
        residues: Some(ResidueSet { m: 1, matrices: s.to_vec() }),
        value: q(v),
    };
    let split = SupportSpec::new(vec![part(s1, 1), part(s2, 1)]).unwrap();
    assert_eq!(orbital_integral(&split, &g, 2).unwrap().value, Some(q(2)));
    let a = orbital_integral(&SupportSpec::new(vec![part(s1, 1)]).unwrap(), &g, 2).unwrap().value.unwrap();
    let b = orbital_integral(&SupportSpec::new(vec![part(s2, 1)]).unwrap(), &g, 2).unwrap().value.unwrap();
    assert_eq!(a + b, q(2));
    let _: Q = q(0);
    assert!(SupportSpec::new(vec![part(s1, 1), part(s1, 2)]).is_err());
}

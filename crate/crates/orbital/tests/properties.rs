use lk_exact::q;
use lk_orbital::*;
use lk_padic::PadicMatrix;
use lk_ring::GaloisRing;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn ring(p: u64, r: usize) -> Arc<GaloisRing> {
    Arc::new(GaloisRing::new(p, 24, r).unwrap())
}

/// `p^{scale} A` as a matrix over `GR(p^24, r)` (with a denominator when
/// `scale < 0`), times `k` on the right.
fn basis_times(l: &LatticeRep, ring: &Arc<GaloisRing>, k: &PadicMatrix) -> PadicMatrix {
    let n = l.n();
    let shift = l.scale.max(0) as u32;
    let a: Vec<Vec<u64>> =
        l.basis.iter().flatten().map(|c| ring.mul_p_pow(&ring.from_coeffs(c).unwrap(), shift)).collect();
    let e = (0..n * n)
        .map(|ij| {
            (0..n).fold(ring.zero(), |acc, t| ring.add(&acc, &ring.mul(&a[(ij / n) * n + t], k.entry(t, ij % n))))
        })
        .collect();
    PadicMatrix::new(ring.clone(), n, (-l.scale).max(0) as u32, e).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn hnf_is_canonical(seed in any::<u64>(), case in 0usize..4) {
        let (n, p, r, d) = [(2usize, 2u64, 1usize, 2u32), (2, 3, 1, 1), (2, 2, 2, 1), (3, 2, 1, 1)][case];
        let lats = enumerate_cosets(n, p, r, d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = &lats[rng.gen_range(0..lats.len())];
        let ring = ring(p, r);
        let k = PadicMatrix::random_invertible(ring.clone(), n, &mut rng);
        prop_assert_eq!(&hnf_of(&basis_times(l, &ring, &k)).unwrap(), l);
    }
}

fn mixed() -> SupportSpec {
    SupportSpec::new(vec![
        SupportComponent { divisors: vec![0, 1], residues: None, value: q(2) },
        SupportComponent { divisors: vec![0, 2], residues: None, value: q(-1) },
        SupportComponent { divisors: vec![1, 1], residues: None, value: q(7) },
    ])
    .unwrap()
}

#[test]
fn orbital_integrals_are_conjugation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (p, rows) in [(2u64, [[0i64, 2], [1, 0]]), (3, [[0, 3], [1, 0]]), (2, [[0, -4], [1, -2]]), (3, [[0, -3], [1, 3]])] {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        let g = PadicMatrix::from_int_rows(p, 1, 24, &rows).unwrap();
        let base = orbital_integral(&mixed(), &g, 2).unwrap();
        assert!(base.stable, "p={p} {rows:?}");
        for _ in 0..20 {
            let k = PadicMatrix::random_invertible(g.ring().clone(), 2, &mut rng);
            let c = orbital_integral(&mixed(), &g.sigma_conjugate(&k).unwrap(), 2).unwrap();
            assert_eq!(c.value, base.value);
        }
    }
}

#[test]
fn twisted_integrals_are_sigma_conjugation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let r = 2;
    let rg = ring(2, r);
    let x2 = vec![0, 2];
    let delta = PadicMatrix::new(rg.clone(), 2, 0, vec![rg.zero(), x2, rg.one(), rg.zero()]).unwrap();
    let phi = SupportSpec::unit(2);
    let base = twisted_orbital_integral(&phi, &delta, 2).unwrap();
    assert_eq!(base.value, Some(q(2)));
    for _ in 0..20 {
        let k = PadicMatrix::random_invertible(rg.clone(), 2, &mut rng);
        let c = twisted_orbital_integral(&phi, &delta.sigma_conjugate(&k).unwrap(), 2).unwrap();
        assert_eq!(c.value, base.value);
    }
}

#[test]
fn certified_values_survive_two_more_levels() {
    for (p, rows) in [(2u64, vec![vec![0i64, 2], vec![1, 0]]), (2, vec![vec![0, -4], vec![1, -2]]), (3, vec![vec![0, -3], vec![1, 3]])] {
        let g = PadicMatrix::from_int_rows(p, 1, 24, &rows).unwrap();
        let f = mixed();
        let rep = orbital_integral(&f, &g, 2).unwrap();
        let sums = depth_sums(&f, &g, Mode::Plain, 4).unwrap();
        assert_eq!(Some(sums[4].sum.clone()), rep.value);
    }
}

#[test]
fn ball_sizes_match_the_tree() {
    // 1 + (q + 1)(q^d − 1)/(q − 1) vertices within distance d of a vertex of
    // the (q + 1)-regular tree
    for (p, r) in [(2u64, 1usize), (3, 1), (2, 2)] {
        let rg = ring(p, r);
        let mut e = vec![rg.zero(); 4];
        e[0] = rg.one();
        e[3] = rg.one();
        let id = PadicMatrix::new(rg, 2, 0, e).unwrap();
        let qq = p.pow(r as u32) as usize;
        let sums = depth_sums(&SupportSpec::indicator(vec![0, 0]), &id, Mode::Plain, 3).unwrap();
        for s in sums {
            let expect = 1 + (qq + 1) * (qq.pow(s.depth) - 1) / (qq - 1);
            assert_eq!(s.classes, expect, "p={p} r={r} d={}", s.depth);
            assert_eq!(s.sum, q(expect as i64));
        }
    }
}

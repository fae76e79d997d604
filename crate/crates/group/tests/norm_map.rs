//! Brute-force oracles for the class norm map and the sigma-action.

use lk_group::*;
use lk_ring::make_ring;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn quotient(spec: &IntegralModelSpec, p: u64, m: u32, r: usize) -> QuotientGroup {
    build_quotient(spec, &make_ring(p, m, r).unwrap()).unwrap()
}

/// Sigma-classes as sets, by direct orbit computation over every g.
fn brute_sigma_orbits(q: &QuotientGroup) -> BTreeSet<BTreeSet<u32>> {
    (0..q.size() as u32)
        .map(|x| (0..q.size() as u32).map(|g| q.sigma_conj(g, x)).collect())
        .collect()
}

#[test]
fn sigma_classes_match_brute_force() {
    for (p, m, r) in [(2, 1, 2), (2, 2, 2), (3, 1, 2)] {
        let q = quotient(&IntegralModelSpec::full(1, m), p, m, r);
        let t = sigma_classes(&q);
        let ours: BTreeSet<BTreeSet<u32>> = (0..t.len() as u32).map(|c| t.members(c).into_iter().collect()).collect();
        assert_eq!(ours, brute_sigma_orbits(&q));
    }
    let q = quotient(&IntegralModelSpec::full(2, 1), 2, 1, 2);
    let t = sigma_classes(&q);
    assert_eq!(brute_sigma_orbits(&q).len(), t.len());
}

#[test]
fn norm_bijection_on_small_models() {
    let cases = [
        (IntegralModelSpec::full(1, 2), 2, 2, 2),
        (IntegralModelSpec::full(1, 1), 3, 1, 2),
        (IntegralModelSpec::full(2, 1), 2, 1, 2),
        (IntegralModelSpec::parahoric(2, vec![1], 1), 2, 1, 2),
        (IntegralModelSpec::parahoric(2, vec![1], 1), 3, 1, 2),
        (IntegralModelSpec::full(1, 1), 2, 2, 3),
    ];
    for (spec, p, m, r) in cases {
        let q = quotient(&spec, p, m, r);
        let (c, s) = class_tables(&q);
        let nm = class_norm_map(&q, &c, &s).unwrap();
        assert!(nm.certificate.holds(), "{spec:?} p={p} m={m} r={r}");
        let all: Vec<u32> = (0..q.size() as u32).collect();
        assert!(certify_centralizers(&q, &s, &all));
        assert!(certify_centralizers(&q, &c, &q.sigma_fixed()));
    }
}

#[test]
fn norm_intertwines_sigma_conjugation_exhaustively() {
    let q = quotient(&IntegralModelSpec::full(2, 1), 2, 1, 2);
    for g in 0..q.size() as u32 {
        for d in (0..q.size() as u32).step_by(3) {
            assert_eq!(q.norm_element(q.sigma_conj(g, d)), q.conj(g, q.norm_element(d)));
        }
    }
}

#[test]
fn random_class_functions_satisfy_convolution_identity() {
    let params = make_ring(2, 1, 2).unwrap();
    let g = build_quotient(&IntegralModelSpec::full(2, 1), &params).unwrap();
    let ctx = ConvolutionContext::new(&g, &g).unwrap();
    let mut seed = 7u64;
    for _ in 0..5 {
        let f: Vec<lk_exact::Q> = (0..ctx.classes().len())
            .map(|_| {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                lk_exact::q_frac((seed >> 40) as i64 % 17 - 8, 1 + (seed >> 20) as i64 % 5)
            })
            .collect();
        for d in 0..g.size() as u32 {
            assert!(ctx.check(&f, d).unwrap().equal);
        }
    }
}

#[test]
fn parahoric_two_levels() {
    let params = make_ring(2, 2, 1).unwrap();
    let fine = build_quotient(&IntegralModelSpec::parahoric(2, vec![1], 2), &params).unwrap();
    let coarse = build_quotient(&IntegralModelSpec::parahoric(2, vec![1], 1), &params).unwrap();
    assert!(ConvolutionContext::new(&fine, &coarse).unwrap().exhaustive().holds());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn norm_compatibility_gl2_gr_4_2(g in 0u32..46080, d in 0u32..46080) {
        use std::sync::OnceLock;
        static Q: OnceLock<QuotientGroup> = OnceLock::new();
        let q = Q.get_or_init(|| quotient(&IntegralModelSpec::full(2, 2), 2, 2, 2));
        prop_assert_eq!(q.size(), 46080);
        prop_assert_eq!(q.norm_element(q.sigma_conj(g, d)), q.conj(g, q.norm_element(d)));
        prop_assert_eq!(q.sigma(q.mul(g, d)), q.mul(q.sigma(g), q.sigma(d)));
    }
}

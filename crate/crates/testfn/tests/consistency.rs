use lk_padic::PadicMatrix;
use lk_ring::GaloisRing;
use lk_testfn::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use std::time::Instant;

fn deltas(p: u64, n: usize, r: usize) -> Vec<PadicMatrix> {
    let ring = Arc::new(GaloisRing::new(p, 10, r).unwrap());
    let m = |rows: &[Vec<Vec<u64>>]| {
        let e = rows.iter().flatten().map(|c| ring.from_coeffs(c).unwrap()).collect();
        PadicMatrix::new(ring.clone(), rows.len(), 0, e).unwrap()
    };
    let c = |x: u64| -> Vec<u64> {
        let mut v = vec![0; r];
        v[0] = x;
        v
    };
    let u = p - 1;
    match n {
        1 => vec![m(&[vec![c(p)]]), m(&[vec![c(p * u)]])],
        _ => {
            let mut out = vec![
                m(&[vec![c(p), c(0)], vec![c(0), c(1)]]),
                m(&[vec![c(0), c(p)], vec![c(1), c(0)]]),
                m(&[vec![c(p), c(0)], vec![c(0), c(u)]]),
                m(&[vec![c(p), c(1)], vec![c(0), c(u)]]),
                m(&[vec![c(0), c(p)], vec![c(1), c(1)]]),
            ];
            if r == 2 {
                let x = vec![0, 1];
                out.push(m(&[vec![c(p), c(0)], vec![c(0), x.clone()]]));
                out.push(m(&[vec![c(0), c(p)], vec![x, c(0)]]));
            }
            out
        }
    }
}

/// Every point mass `g · e_{Γ(p^m)}` against a list of `δ₀` of each height,
/// for `n ≤ 2`, `p ∈ {2, 3}`, `m ≤ 2`, `r ≤ 2`.
#[test]
fn both_routes_agree_on_the_matrix() {
    let start = Instant::now();
    let mut checked = 0;
    for n in 1..=2usize {
        for p in [2u64, 3] {
            for m in 1..=2u32 {
                let ctx = TraceContext::new(n, p, m).unwrap();
                for r in 1..=2u32 {
                    for d in deltas(p, n, r as usize) {
                        for g in 0..ctx.group().size() as u32 {
                            let h = HeckeFunction::point(ctx.group(), g);
                            let c = ctx.consistency(&h, &d, r).unwrap();
                            assert!(c.equal, "n={n} p={p} m={m} r={r} δ={:?} g={g}: {c:?}", d.to_input());
                            assert!(c.orbit_single_class);
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    eprintln!("{checked} cases in {:?}", start.elapsed());
}

#[test]
fn routes_agree_after_random_conjugation() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for (n, p, m) in [(2usize, 2u64, 1u32), (2, 3, 1), (2, 2, 2)] {
        let ctx = TraceContext::new(n, p, m).unwrap();
        for r in 1..=2u32 {
            for d in deltas(p, n, r as usize) {
                let h = HeckeFunction::point(ctx.group(), 1 % ctx.group().size() as u32);
                let base = ctx.consistency(&h, &d, r).unwrap();
                for _ in 0..20 {
                    let g = PadicMatrix::random_invertible(d.ring().clone(), n, &mut rng);
                    let c = ctx.consistency(&h, &d.sigma_conjugate(&g).unwrap(), r).unwrap();
                    assert!(c.equal);
                    assert_eq!(c.route_a, base.route_a);
                }
            }
        }
    }
}

#[test]
fn documented_pairs() {
    let ctx = TraceContext::new(2, 2, 1).unwrap();
    let e = HeckeFunction::point(ctx.group(), ctx.group().identity());
    let d = PadicMatrix::from_int_rows(2, 1, 10, &[vec![2, 0], vec![0, 1]]).unwrap();
    let c = ctx.consistency(&e, &d, 1).unwrap();
    assert!(c.equal && c.k == Some(1));
    let d = PadicMatrix::from_int_rows(2, 1, 10, &[vec![0, 2], vec![1, 0]]).unwrap();
    let c = ctx.consistency(&e, &d, 1).unwrap();
    assert!(c.equal && c.k == Some(2));
    assert_eq!(c.fixed_level_structures, 1);
}

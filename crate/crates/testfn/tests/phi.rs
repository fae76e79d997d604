use lk_exact::{q, Q};
use lk_padic::PadicMatrix;
use lk_ring::{fmat, GaloisRing};
use lk_testfn::*;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

fn ints(p: u64, r: usize, rows: &[Vec<i64>]) -> PadicMatrix {
    PadicMatrix::from_int_rows(p, r, 10, rows).unwrap()
}

fn random_h(ctx: &TraceContext, rng: &mut ChaCha8Rng, terms: usize) -> HeckeFunction {
    let size = ctx.group().size() as u32;
    let masses: BTreeMap<u32, Q> = (0..terms).map(|_| (rng.gen_range(0..size), q(rng.gen_range(-5..=5)))).collect();
    HeckeFunction::from_masses(ctx.group(), masses)
}

#[test]
fn h_vee_examples() {
    let ctx = TraceContext::new(2, 3, 1).unwrap();
    let g = ctx.group();
    let u = HeckeFunction::uniform(g);
    assert_eq!(ctx.h_vee(&u), u);
    let x = g.id_of(&[1, 1, 0, 1]).unwrap();
    let pt = HeckeFunction::point(g, x);
    // ((g^{-1})^t) for g = [[1,1],[0,1]] is [[1,0],[2,1]] mod 3
    assert_eq!(ctx.h_vee(&pt), HeckeFunction::point(g, g.id_of(&[1, 0, 2, 1]).unwrap()));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let h = random_h(&ctx, &mut rng, 6);
        assert_eq!(ctx.h_vee(&ctx.h_vee(&h)), h);
    }
}

#[test]
fn outside_the_double_coset() {
    let ctx = TraceContext::new(2, 2, 1).unwrap();
    let u = HeckeFunction::uniform(ctx.group());
    let v = ctx.phi(&u, &ints(2, 1, &[vec![1, 0], vec![0, 1]]), 1).unwrap();
    assert!(!v.in_support);
    assert!(v.value.is_zero());
    let v = ctx.phi(&u, &ints(2, 1, &[vec![2, 0], vec![0, 2]]), 1).unwrap();
    assert!(v.value.is_zero());
}

#[test]
fn rank_one_is_total_mass() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, m) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2)] {
        let ctx = TraceContext::new(1, p, m).unwrap();
        for r in 1..=2u32 {
            let h = random_h(&ctx, &mut rng, 4);
            let d = ints(p, r as usize, &[vec![p as i64]]);
            assert_eq!(ctx.phi(&h, &d, r).unwrap().value, h.total_mass(), "p={p} m={m} r={r}");
            let c = ctx.consistency(&h, &d, r).unwrap();
            assert!(c.equal, "{c:?}");
        }
    }
}

/// `(1/|G|) Σ_g #{lines L : gL = L, g = 1 on F_p^2/L}` for `h` uniform on
/// `GL_2(F_p)`, `k = 1`, `Nδ₂ = 1`: here `I_1^0 = 1` and the centralizer of
/// `1` in `GL_1(F_p)` has `p − 1` elements.
fn uniform_oracle(p: u64) -> Q {
    let lines: Vec<(u64, u64)> = std::iter::once((0, 1)).chain((0..p).map(|a| (1, a))).collect();
    let mut count = 0i64;
    let mut order = 0i64;
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - (b * c) % p) % p == 0 {
                        continue;
                    }
                    order += 1;
                    for &(x, y) in &lines {
                        let (gx, gy) = ((a * x + b * y) % p, (c * x + d * y) % p);
                        // gL = L and g acts on the quotient by det(g)/λ where g(x,y) = λ(x,y)
                        if (gx * y + p * p - (gy * x) % p) % p != 0 {
                            continue;
                        }
                        let lambda = if x != 0 { gx * inv_mod(x, p) % p } else { gy * inv_mod(y, p) % p };
                        let det = (a * d + p * p - (b * c) % p) % p;
                        if det == lambda % p {
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    Q::new((count * (p as i64 - 1)).into(), order.into())
}

fn inv_mod(x: u64, p: u64) -> u64 {
    (1..p).find(|y| x * y % p == 1).unwrap()
}

#[test]
fn diag_p_one_uniform() {
    for p in [2u64, 3] {
        let ctx = TraceContext::new(2, p, 1).unwrap();
        let u = HeckeFunction::uniform(ctx.group());
        let v = ctx.phi(&u, &ints(p, 1, &[vec![p as i64, 0], vec![0, 1]]), 1).unwrap();
        assert_eq!(v.k, Some(1));
        assert_eq!(v.n_delta2, Some(vec![vec![1]]));
        assert_eq!(v.value, uniform_oracle(p), "p={p}");
        let direct = lk_characters::ik_trace(ctx.level(), 2, 1, 1, &u, &[1]).unwrap();
        assert_eq!(v.value, direct);
    }
}

#[test]
fn linear_in_h() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let ctx = TraceContext::new(2, 2, 2).unwrap();
    for d in [ints(2, 1, &[vec![2, 0], vec![0, 3]]), ints(2, 1, &[vec![0, 2], vec![1, 0]])] {
        let h1 = random_h(&ctx, &mut rng, 5);
        let h2 = random_h(&ctx, &mut rng, 5);
        let c = q(-3);
        let lhs = ctx.phi(&h1.add(&h2.scale(&c)), &d, 1).unwrap().value;
        let rhs = ctx.phi(&h1, &d, 1).unwrap().value + c * ctx.phi(&h2, &d, 1).unwrap().value;
        assert_eq!(lhs, rhs);
    }
}

fn times(a: &PadicMatrix, b: &PadicMatrix) -> PadicMatrix {
    let (r, n) = (a.ring(), a.n());
    let e = (0..n * n)
        .map(|ij| (0..n).fold(r.zero(), |acc, l| r.add(&acc, &r.mul(a.entry(ij / n, l), b.entry(l, ij % n)))))
        .collect();
    a.with_entries(e)
}

fn random_delta(p: u64, r: usize, n: usize, rng: &mut ChaCha8Rng) -> PadicMatrix {
    let ring = Arc::new(GaloisRing::new(p, 10, r).unwrap());
    let mut e = vec![ring.zero(); n * n];
    for i in 0..n {
        e[i * n + i] = if i == 0 { ring.from_int(p as i64) } else { ring.one() };
    }
    let d = PadicMatrix::new(ring.clone(), n, 0, e).unwrap();
    let g1 = PadicMatrix::random_invertible(ring.clone(), n, rng);
    let g2 = PadicMatrix::random_invertible(ring, n, rng);
    times(&times(&g1, &d), &g2)
}

#[test]
fn invariant_under_sigma_conjugation() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (p, m) in [(2u64, 1u32), (3, 1), (2, 2)] {
        let ctx = TraceContext::new(2, p, m).unwrap();
        for r in 1..=2usize {
            for _ in 0..4 {
                let d = random_delta(p, r, 2, &mut rng);
                let h = random_h(&ctx, &mut rng, 3);
                let v = ctx.phi(&h, &d, r as u32).unwrap().value;
                for _ in 0..20 {
                    let g = PadicMatrix::random_invertible(d.ring().clone(), 2, &mut rng);
                    let w = ctx.phi(&h, &d.sigma_conjugate(&g).unwrap(), r as u32).unwrap().value;
                    assert_eq!(v, w, "p={p} m={m} r={r}");
                }
            }
        }
    }
}

#[test]
fn bad_inputs() {
    let ctx = TraceContext::new(2, 2, 1).unwrap();
    let u = HeckeFunction::uniform(ctx.group());
    assert!(ctx.phi(&u, &ints(3, 1, &[vec![3, 0], vec![0, 1]]), 1).is_err());
    assert!(ctx.phi(&u, &ints(2, 2, &[vec![2, 0], vec![0, 1]]), 1).is_err());
    let low = PadicMatrix::from_int_rows(2, 1, 1, &[vec![0, 0], vec![0, 1]]).unwrap();
    assert!(ctx.phi(&u, &low, 1).is_err());
    let _ = fmat::identity(2);
}

use lk_exact::{q, q_frac, QuadExt, Q};
use lk_testfn::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn rat(p: u64, x: Q) -> QuadExt {
    QuadExt::rational(p as i64, x)
}

fn unramified(p: u64, z: Q) -> CentralCharacter {
    CentralCharacter::Unramified { value: rat(p, z) }
}

#[test]
fn rank_one_scalar() {
    // π⁰ = χ₀ with χ₀(p) = c and χ(p) = z: the lhs is c^{-r} z^{-r}
    let (p, c, z) = (3u64, q(2), q_frac(1, 5));
    let ctx = TraceContext::new(1, p, 1).unwrap();
    let h = HeckeFunction::uniform(ctx.group());
    for r in 1..=3u32 {
        let pi = ProductRep { twist: rat(p, c.clone()), subquotient: 0, central: unramified(p, z.clone()) };
        let out = gu_spectral_check(&ctx, &h, r, &pi).unwrap();
        let expect = rat(p, (c.clone() * z.clone()).recip()).pow(r as i64).unwrap();
        assert_eq!(out.lhs, expect, "r={r}");
        assert!(out.equal);
    }
}

#[test]
fn ramified_central_character_vanishes() {
    let ctx = TraceContext::new(2, 2, 1).unwrap();
    let h = HeckeFunction::uniform(ctx.group());
    let pi = ProductRep { twist: rat(2, q(1)), subquotient: 0, central: CentralCharacter::Ramified };
    let out = gu_spectral_check(&ctx, &h, 1, &pi).unwrap();
    assert!(out.lhs.is_zero() && out.rhs.is_zero() && out.equal);
}

#[test]
fn trivial_rep_at_the_unit() {
    for (n, p) in [(2usize, 2u64), (2, 3), (3, 2)] {
        let ctx = TraceContext::new(n, p, 1).unwrap();
        let e = HeckeFunction::point(ctx.group(), ctx.group().identity());
        for r in 1..=2u32 {
            let pi = ProductRep { twist: rat(p, q(1)), subquotient: 0, central: unramified(p, q(1)) };
            let out = gu_spectral_check(&ctx, &e, r, &pi).unwrap();
            let pr = (p as i64).pow(r);
            let expect: i64 = (0..n as u32).map(|i| pr.pow(i)).sum();
            assert_eq!(out.lhs, rat(p, q(expect)), "n={n} p={p} r={r}");
            assert!(out.equal);
        }
    }
}

#[test]
fn every_subquotient_matches() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (n, p, m) in [(2usize, 2u64, 1u32), (2, 3, 1), (2, 2, 2), (3, 2, 1)] {
        let ctx = TraceContext::new(n, p, m).unwrap();
        let size = ctx.group().size() as u32;
        for _ in 0..4 {
            let masses: BTreeMap<u32, Q> = (0..5).map(|_| (rng.gen_range(0..size), q(rng.gen_range(-3..=3)))).collect();
            let h = HeckeFunction::from_masses(ctx.group(), masses);
            for j in 0..n {
                for r in 1..=2u32 {
                    let pi = ProductRep {
                        twist: rat(p, q_frac(rng.gen_range(1..5), rng.gen_range(1..5))),
                        subquotient: j,
                        central: unramified(p, q(rng.gen_range(1..4))),
                    };
                    let out = gu_spectral_check(&ctx, &h, r, &pi).unwrap();
                    assert!(out.equal, "n={n} p={p} m={m} j={j} r={r}: {out:?}");
                }
            }
        }
        let pi = ProductRep { twist: rat(p, q(1)), subquotient: n, central: unramified(p, q(1)) };
        assert!(gu_spectral_check(&ctx, &HeckeFunction::uniform(ctx.group()), 1, &pi).is_err());
    }
}

#[test]
fn wrapper_parts() {
    let ctx = TraceContext::new(2, 2, 1).unwrap();
    let g = ctx.group();
    let x = g.id_of(&[1, 1, 0, 1]).unwrap();
    let w = gu_wrapper(&ctx, &HeckeFunction::point(g, x), 3);
    assert_eq!(w.gl1_valuation, -3);
    let back = HeckeFunction::from_input(&w.gl_n_part, g).unwrap();
    assert_eq!(back, HeckeFunction::point(g, g.id_of(&[1, 0, 1, 1]).unwrap()));
}

fn small_q() -> impl Strategy<Value = Q> {
    (1i64..6, 1i64..6, any::<bool>()).prop_map(|(a, b, s)| q_frac(if s { a } else { -a }, b))
}

proptest! {
    #[test]
    fn scalar_twists_by_u_to_the_r(vals in prop::collection::vec(small_q(), 1..4), u in small_q(), r in 1u32..4) {
        let p = 3u64;
        let s = CuspidalSupport::unramified(p, vals.iter().map(|v| rat(p, v.clone())).collect());
        let n = s.n();
        let ut = rat(p, u.clone());
        let lhs = ss_trace_scalar(&s.twist(&ut), n, r).unwrap();
        let rhs = &ut.pow(r as i64).unwrap() * &ss_trace_scalar(&s, n, r).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(s.dual().dual(), s);
    }
}

use crate::cases::{deltas, Matrix};
use crate::Outcome;
use lk_characters::{
    eqrepr_check, ik0, steinberg_flag_model as flag_model, steinberg_virtual, transition_complex_exactness, Level,
};
use lk_exact::q;
use lk_group::{
    build_quotient, certify_centralizers, class_norm_map, class_tables, general_linear, ConvolutionContext,
    IntegralModelSpec, QuotientGroup,
};
use lk_orbital::{depth_sums, orbital_integral, twisted_orbital_integral, Mode, SupportComponent, SupportSpec};
use lk_padic::PadicMatrix;
use lk_ring::{make_ring, GaloisRing};
use lk_strata::{build_summand_poset, check_star, compute_w_spaces, nearby_cycle_dims_check};
use lk_testfn::{HeckeFunction, TraceContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::sync::Arc;

fn parahoric(p: u64, m: u32, r: usize, c: u32) -> Result<QuotientGroup, String> {
    let params = make_ring(p, m, r).map_err(|e| e.to_string())?;
    build_quotient(&IntegralModelSpec::parahoric(2, vec![1], c), &params).map_err(|e| e.to_string())
}

fn norm_groups(matrix: Matrix) -> Vec<(String, Result<QuotientGroup, String>)> {
    let mut out: Vec<(String, Result<QuotientGroup, String>)> = matrix
        .norm_cases()
        .into_iter()
        .map(|(n, p, m, r)| (format!("GL_{n}(GR({p}^{m},{r}))"), general_linear(n, p, m, r).map_err(|e| e.to_string())))
        .collect();
    out.push(("parahoric GL_2(GR(2,2))".into(), parahoric(2, 1, 2, 1)));
    out
}

pub fn norm_bijection(matrix: Matrix) -> Outcome {
    let mut out = Outcome::default();
    for (label, g) in norm_groups(matrix) {
        let g = match g {
            Ok(g) => g,
            Err(e) => {
                out.fail(format!("{label}: {e}"));
                continue;
            }
        };
        let (conj, sig) = class_tables(&g);
        match class_norm_map(&g, &conj, &sig) {
            Ok(nm) => out.check(nm.certificate.holds(), || format!("{label}: {:?}", nm.certificate)),
            Err(e) => out.fail(format!("{label}: {e}")),
        }
        let all: Vec<u32> = (0..g.size() as u32).collect();
        out.check(certify_centralizers(&g, &sig, &all), || format!("{label}: sigma-centralizers"));
        out.check(certify_centralizers(&g, &conj, &g.sigma_fixed()), || format!("{label}: centralizers"));
    }
    out
}

fn convolve(out: &mut Outcome, label: &str, fine: &QuotientGroup, coarse: &QuotientGroup) {
    match ConvolutionContext::new(fine, coarse) {
        Ok(ctx) => {
            let rep = ctx.exhaustive();
            out.check(rep.holds(), || format!("{label}: {:?}", rep));
        }
        Err(e) => out.fail(format!("{label}: {e}")),
    }
}

pub fn convolution_identity(matrix: Matrix) -> Outcome {
    let mut out = Outcome::default();
    for (label, g) in norm_groups(matrix) {
        match g {
            Ok(g) => convolve(&mut out, &label, &g, &g),
            Err(e) => out.fail(format!("{label}: {e}")),
        }
    }
    // a fine level against a coarser one
    match (parahoric(2, 2, 1, 2), parahoric(2, 2, 1, 1)) {
        (Ok(fine), Ok(coarse)) => convolve(&mut out, "parahoric GL_2(Z/4) levels 2/1", &fine, &coarse),
        (Err(e), _) | (_, Err(e)) => out.fail(e),
    }
    out
}

pub fn steinberg_flag_model(matrix: Matrix) -> Outcome {
    let mut out = Outcome::default();
    for (k, p, m) in matrix.level_cases() {
        let label = format!("k={k} p={p} m={m}");
        let l = match Level::new(k, p, m) {
            Ok(l) => l,
            Err(e) => {
                out.fail(format!("{label}: {e}"));
                continue;
            }
        };
        match (flag_model(&l, k), steinberg_virtual(&l, k)) {
            (Ok((_, chi)), Ok(alt)) => {
                let d = chi.differences(&alt);
                out.check(d.is_empty(), || format!("{label}: {} differing classes", d.len()));
            }
            (Err(e), _) | (_, Err(e)) => out.fail(format!("{label}: {e}")),
        }
        match transition_complex_exactness(k, p, m) {
            Ok(r) => out.check(r.holds(), || format!("{label}: complex not exact")),
            Err(e) => out.fail(format!("{label}: {e}")),
        }
    }
    out
}

pub fn star_and_stalks(matrix: Matrix) -> Outcome {
    let mut out = Outcome::default();
    for (n, p, m) in matrix.level_cases() {
        let label = format!("n={n} p={p} m={m}");
        match build_summand_poset(n, p, m) {
            Ok(poset) => {
                let w = compute_w_spaces(&poset);
                let star = check_star(&poset, &w);
                out.check(star.holds, || format!("{label}: {:?}", star.first_failure));
            }
            Err(e) => out.fail(format!("{label}: {e}")),
        }
        for k in 1..=n {
            match nearby_cycle_dims_check(n, p, m, k) {
                Ok(r) => out.check(r.holds, || format!("{label} k={k}: {:?}", r.rows)),
                Err(e) => out.fail(format!("{label} k={k}: {e}")),
            }
        }
    }
    out
}

pub fn ik0_dual_formula(matrix: Matrix) -> Outcome {
    let mut out = Outcome::default();
    for (k, p, m) in matrix.level_cases() {
        let l = match Level::new(k, p, m) {
            Ok(l) => l,
            Err(e) => {
                out.fail(format!("k={k} p={p} m={m}: {e}"));
                continue;
            }
        };
        for r in 1..=matrix.r_max(3) {
            // ik0 checks both formulas and g ↦ g^{-1} at every point
            let res = ik0(&l, k, r);
            out.check(res.is_ok(), || format!("k={k} p={p} m={m} r={r}: {}", res.unwrap_err()));
        }
    }
    out
}

pub fn eqrepr_identity(matrix: Matrix) -> Outcome {
    let mut out = Outcome::default();
    for (n, p, m) in matrix.level_cases() {
        let l = match Level::new(n, p, m) {
            Ok(l) => l,
            Err(e) => {
                out.fail(format!("n={n} p={p} m={m}: {e}"));
                continue;
            }
        };
        for r in 1..=matrix.r_max(2) {
            match eqrepr_check(&l, n, r) {
                Ok(rep) => out.check(rep.holds(), || format!("n={n} p={p} m={m} r={r}: nonzero residual")),
                Err(e) => out.fail(format!("n={n} p={p} m={m} r={r}: {e}")),
            }
        }
    }
    out
}

pub fn two_route_consistency(matrix: Matrix) -> Outcome {
    let mut out = Outcome::default();
    for (n, p, m) in matrix.phi_cases() {
        let ctx = match TraceContext::new(n, p, m) {
            Ok(c) => c,
            Err(e) => {
                out.fail(format!("n={n} p={p} m={m}: {e}"));
                continue;
            }
        };
        for r in 1..=matrix.r_max(2) {
            let mut heights = BTreeSet::new();
            for d in deltas(p, n, r as usize) {
                for g in 0..ctx.group().size() as u32 {
                    let h = HeckeFunction::point(ctx.group(), g);
                    match ctx.consistency(&h, &d, r) {
                        Ok(c) => {
                            if let Some(k) = c.k {
                                heights.insert(k);
                            }
                            out.check(c.equal && c.orbit_single_class, || {
                                format!("p={p} m={m} r={r} δ={:?} g={g}: {} vs {}", d.to_input().entries, c.route_a, c.route_b)
                            });
                        }
                        Err(e) => out.fail(format!("p={p} m={m} r={r} g={g}: {e}")),
                    }
                }
            }
            let all: BTreeSet<usize> = (1..=n).collect();
            out.check(heights == all, || format!("p={p} m={m} r={r}: heights {heights:?}"));
        }
    }
    out
}

pub fn double_coset_volume(matrix: Matrix) -> Outcome {
    let mut out = Outcome::default();
    for (n, p, r) in matrix.volume_cases() {
        let expect = lk_orbital::volume_closed_form(n, p, r);
        match lk_orbital::double_coset_volume(n, p, r) {
            Ok(v) => out.check(v == expect, || format!("n={n} p={p} r={r}: {v} != {expect}")),
            Err(e) => out.fail(format!("n={n} p={p} r={r}: {e}")),
        }
    }
    out
}

fn int_matrix(p: u64, rows: &[[i64; 2]]) -> PadicMatrix {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    PadicMatrix::from_int_rows(p, 1, 24, &rows).expect("integer matrix")
}

fn orbital_specs() -> Vec<SupportSpec> {
    let c = |d: [i64; 2], v: i64| SupportComponent { divisors: d.to_vec(), residues: None, value: q(v) };
    vec![
        SupportSpec::unit(2),
        SupportSpec::new(vec![c([0, 1], 2), c([0, 2], -1), c([1, 1], 7)]).expect("disjoint"),
    ]
}

pub fn orbital_engine(matrix: Matrix) -> Outcome {
    let mut out = Outcome::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let primes: &[u64] = if matrix == Matrix::Smoke { &[2] } else { &[2, 3] };
    for &p in primes {
        let pi = p as i64;
        let gammas = [
            [[0, pi], [1, 0]],
            [[0, -pi * pi], [1, -pi]],
            [[0, -pi], [1, pi]],
            [[1, 0], [0, pi]],
            [[pi, 1], [1, 0]],
            [[1, pi], [pi, 1 + pi]],
        ];
        for rows in &gammas {
            let g = int_matrix(p, rows);
            for f in orbital_specs() {
                // r = 1: the twisted sum is the plain sum
                match (depth_sums(&f, &g, Mode::Plain, 3), depth_sums(&f, &g, Mode::Twisted, 3)) {
                    (Ok(a), Ok(b)) => out.check(a == b, || format!("p={p} γ={rows:?}: TO != O at r = 1")),
                    (Err(e), _) | (_, Err(e)) => out.fail(format!("p={p} γ={rows:?}: {e}")),
                }
                let base = match orbital_integral(&f, &g, 4) {
                    Ok(b) => b,
                    Err(e) => {
                        out.fail(format!("p={p} γ={rows:?}: {e}"));
                        continue;
                    }
                };
                if base.elliptic != Some(true) {
                    continue;
                }
                out.check(base.stable, || format!("p={p} γ={rows:?}: elliptic but unstable"));
                // certified values persist one level further
                match depth_sums(&f, &g, Mode::Plain, 6) {
                    Ok(s) => out.check(Some(&s[6].sum) == base.value.as_ref() || !base.stable, || {
                        format!("p={p} γ={rows:?}: value moved at D + 2")
                    }),
                    Err(e) => out.fail(format!("p={p} γ={rows:?}: {e}")),
                }
                for _ in 0..20 {
                    let k = PadicMatrix::random_invertible(g.ring().clone(), 2, &mut rng);
                    let c = g.sigma_conjugate(&k).map_err(|e| e.to_string()).and_then(|gk| {
                        orbital_integral(&f, &gk, 4).map_err(|e| e.to_string())
                    });
                    match c {
                        Ok(c) => out.check(c.value == base.value, || format!("p={p} γ={rows:?}: not conjugation invariant")),
                        Err(e) => out.fail(e),
                    }
                }
            }
        }
        // the documented elliptic value, certified at two consecutive depths
        let g = int_matrix(p, &[[0, pi], [1, 0]]);
        match orbital_integral(&SupportSpec::unit(2), &g, 2) {
            Ok(rep) => {
                let ok = rep.stable
                    && rep.value == Some(q(2))
                    && rep.sums[2].sum == rep.sums[3].sum
                    && rep.elliptic == Some(true);
                out.check(ok, || format!("p={p}: O_γ = {:?}, stable = {}", rep.value, rep.stable));
            }
            Err(e) => out.fail(format!("p={p}: {e}")),
        }
        // σ-conjugation invariance of twisted integrals at r = 2
        let ring = Arc::new(GaloisRing::new(p, 24, 2).expect("ring"));
        let px = vec![0, p];
        let e = vec![ring.zero(), px, ring.one(), ring.zero()];
        let delta = PadicMatrix::new(ring.clone(), 2, 0, e).expect("square");
        let phi = SupportSpec::unit(2);
        match twisted_orbital_integral(&phi, &delta, 2) {
            Ok(base) => {
                out.check(base.stable, || format!("p={p}: twisted integral unstable"));
                for _ in 0..20 {
                    let k = PadicMatrix::random_invertible(ring.clone(), 2, &mut rng);
                    let c = delta.sigma_conjugate(&k).map_err(|e| e.to_string()).and_then(|dk| {
                        twisted_orbital_integral(&phi, &dk, 2).map_err(|e| e.to_string())
                    });
                    match c {
                        Ok(c) => out.check(c.value == base.value, || format!("p={p}: not σ-conjugation invariant")),
                        Err(e) => out.fail(e),
                    }
                }
            }
            Err(e) => out.fail(format!("p={p}: {e}")),
        }
    }
    out
}

pub fn phi_invariance(matrix: Matrix) -> Outcome {
    let mut out = Outcome::default();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for (n, p, m) in matrix.phi_cases() {
        let ctx = match TraceContext::new(n, p, m) {
            Ok(c) => c,
            Err(e) => {
                out.fail(format!("n={n} p={p} m={m}: {e}"));
                continue;
            }
        };
        let size = ctx.group().size() as u32;
        for r in 1..=matrix.r_max(2) {
            for d in deltas(p, n, r as usize) {
                let hs = [
                    HeckeFunction::uniform(ctx.group()),
                    HeckeFunction::point(ctx.group(), rng.gen_range(0..size)),
                    HeckeFunction::point(ctx.group(), rng.gen_range(0..size)),
                ];
                for h in &hs {
                    let base = match ctx.phi(h, &d, r) {
                        Ok(v) => v.value,
                        Err(e) => {
                            out.fail(format!("p={p} m={m} r={r}: {e}"));
                            continue;
                        }
                    };
                    for _ in 0..20 {
                        let g = PadicMatrix::random_invertible(d.ring().clone(), n, &mut rng);
                        let v = d.sigma_conjugate(&g).map_err(|e| e.to_string()).and_then(|dg| {
                            ctx.phi(h, &dg, r).map(|v| v.value).map_err(|e| e.to_string())
                        });
                        match v {
                            Ok(v) => out.check(v == base, || format!("p={p} m={m} r={r} δ={:?}: {v} != {base}", d.to_input().entries)),
                            Err(e) => out.fail(e),
                        }
                    }
                }
            }
        }
    }
    out
}

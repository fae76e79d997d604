use lk_characters::Level;
use lk_exact::q;
use lk_ring::fmat;
use lk_strata::*;

const CASES: [(usize, u64, u32); 10] =
    [(1, 2, 1), (2, 2, 1), (2, 3, 1), (2, 2, 2), (2, 3, 2), (3, 2, 1), (3, 3, 1), (3, 2, 2), (3, 3, 2), (1, 3, 2)];

#[test]
fn star_holds_and_w_is_steinberg() {
    for (n, p, m) in CASES {
        let poset = build_summand_poset(n, p, m).unwrap();
        let w = compute_w_spaces(&poset);
        let star = check_star(&poset, &w);
        assert!(star.holds, "n={n} p={p} m={m}: {:?}", star.first_failure);
        let level = Level::new(n, p, m).unwrap();
        let d = poset.summands().unwrap();
        for e in 1..poset.len() {
            let (rank, _) = d.summand_of(e);
            assert_eq!(w.dim(e), level.steinberg(rank).dim(), "n={n} p={p} m={m} {}", poset.id(e));
        }
    }
}

#[test]
fn stalks_match_induced_degrees() {
    for (n, p, m) in CASES {
        for k in 1..=n {
            let r = nearby_cycle_dims_check(n, p, m, k).unwrap();
            assert!(r.holds, "{r:?}");
            assert_eq!(r.rows[0].stalk_dim, 1);
        }
    }
}

#[test]
fn documented_small_stalks() {
    let poset = build_summand_poset(2, 3, 1).unwrap();
    let w = compute_w_spaces(&poset);
    let star = check_star(&poset, &w);
    let dims: Vec<usize> = (0..=2).map(|k| stalk_dims(&poset, &w, &star, "H2.0", k).unwrap().dim).collect();
    assert_eq!(dims, vec![1, 4, 3]);
    let r = nearby_cycle_dims_check(3, 2, 1, 3).unwrap();
    assert_eq!(r.rows.iter().map(|x| x.stalk_dim).collect::<Vec<_>>(), vec![1, 7, 14, 8]);
}

#[test]
fn ss_trace_stalk_on_every_element() {
    for (k, p, m) in [(1, 2, 2), (2, 2, 1), (2, 3, 1), (2, 2, 2)] {
        let level = Level::new(k, p, m).unwrap();
        let g = level.group(k).unwrap();
        for r in 1..=2 {
            for x in g.points() {
                let s = ss_trace_stalk(k, p, m, r, &x).unwrap();
                assert_eq!(s.value, level.ik0(r, &x).unwrap());
            }
        }
    }
    let e = fmat::identity(3);
    assert_eq!(ss_trace_stalk(3, 2, 1, 1, &e).unwrap().stalk_traces, vec![q(1), q(7), q(14), q(8)]);
}

#[test]
fn stalk_trace_at_lower_strata() {
    // A point on a rank-1 stratum inside n = 3: the trace only sees that line.
    let eq = EquivariantStrata::new(3, 2, 1).unwrap();
    let level = Level::new(1, 2, 1).unwrap();
    let x = eq.elem(1, 0);
    let g = fmat::identity(3);
    assert_eq!(eq.ss_trace(2, &g, x).unwrap(), level.ik0(2, &[1]).unwrap());
    let e2 = eq.elem(2, 0);
    assert_eq!(eq.stalk_trace(&g, e2, 1).unwrap(), q(3));
    assert_eq!(eq.stalk_trace(&g, e2, 2).unwrap(), q(2));
}

#[test]
fn poset_json_round_trip() {
    let poset = build_summand_poset(2, 2, 1).unwrap();
    let json = serde_json::to_string(&poset.to_input()).unwrap();
    let items: Vec<StratumInput> = serde_json::from_str(&json).unwrap();
    let again = StrataPoset::from_input(&items).unwrap();
    let w = compute_w_spaces(&again);
    let star = check_star(&again, &w);
    assert!(star.holds);
    assert_eq!(w.dim(again.elem("H2.0").unwrap()), 2);
}

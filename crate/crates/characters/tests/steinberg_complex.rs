use lk_characters::*;
use lk_exact::q;
use lk_ring::fmat;

const CASES: [(usize, u64, u32); 12] = [
    (1, 2, 1), (1, 3, 2), (2, 2, 1), (2, 3, 1), (2, 2, 2), (2, 3, 2),
    (3, 2, 1), (3, 3, 1), (3, 2, 2), (3, 3, 2), (1, 2, 2), (2, 2, 3),
];

#[test]
fn flag_model_equals_alternating_sum_pointwise() {
    for (k, p, m) in CASES {
        let l = Level::new(k, p, m).unwrap();
        let (dim, chi) = steinberg_flag_model(&l, k).unwrap();
        let alt = steinberg_virtual(&l, k).unwrap();
        assert!(chi.differences(&alt).is_empty(), "k={k} p={p} m={m}");
        assert_eq!(chi.degree(), q(dim as i64));
        if m == 1 {
            assert_eq!(dim as u64, p.pow((k * (k - 1) / 2) as u32));
        }
    }
}

#[test]
fn transition_complex_is_exact() {
    for (k, p, m) in CASES {
        let r = transition_complex_exactness(k, p, m).unwrap();
        assert!(r.holds(), "k={k} p={p} m={m}: {:?}", r.exactness);
        let l = Level::new(k, p, m).unwrap();
        for i in 0..=k {
            assert_eq!(r.w_dims[i], l.steinberg(i).dim());
            assert_eq!(r.exactness.dims[i], r.summands[i] * r.w_dims[i]);
        }
    }
}

/// Steinberg of GL_2(F_q) has values q, 0, 1, -1 on central, unipotent,
/// split and non-split regular semisimple classes.
#[test]
fn gl2_steinberg_values() {
    for p in [2u64, 3] {
        let l = Level::new(2, p, 1).unwrap();
        let (_, chi) = steinberg_flag_model(&l, 2).unwrap();
        for (row, v) in chi.entries().iter().zip(&chi.values) {
            let g: Vec<u32> = row.class_rep.iter().flatten().map(|&x| x as u32).collect();
            let fixed = l.lattice(2).fixed(&g, 1).len() as i64;
            let expect = match fixed {
                0 => -1,
                1 => 0,
                2 => 1,
                _ => p as i64,
            };
            assert_eq!(*v, q(expect), "p={p} g={g:?}");
        }
    }
}

#[test]
fn documented_induced_degrees() {
    let l = Level::new(3, 2, 1).unwrap();
    let e3 = fmat::identity(3);
    assert_eq!(l.ind_st(1, &e3), q(7));
    assert_eq!(l.ind_st(2, &e3), q(7 * 2));
    assert_eq!(l.ind_st(3, &e3), q(8));
    let l = Level::new(2, 3, 1).unwrap();
    assert_eq!(induced_trivial(&l, &ParabolicShape::borel(2)).unwrap().degree(), q(4));
}

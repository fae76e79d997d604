use lk_padic::*;
use lk_ring::GaloisRing;
use std::sync::Arc;

type El = Vec<u64>;

fn ints(p: u64, r: usize, rows: &[Vec<i64>]) -> PadicMatrix {
    PadicMatrix::from_int_rows(p, r, 10, rows).unwrap()
}

fn gr(p: u64, r: usize, prec: u32, rows: &[Vec<Vec<u64>>]) -> PadicMatrix {
    let ring = Arc::new(GaloisRing::new(p, prec, r).unwrap());
    let n = rows.len();
    let entries = rows.iter().flatten().map(|c| ring.from_coeffs(c).unwrap()).collect();
    PadicMatrix::new(ring, n, 0, entries).unwrap()
}

fn det(r: &GaloisRing, n: usize, a: &[El]) -> El {
    match n {
        0 => r.one(),
        1 => a[0].clone(),
        _ => {
            let mut acc = r.zero();
            for j in 0..n {
                let minor: Vec<El> =
                    (1..n).flat_map(|i| (0..n).filter(move |&c| c != j).map(move |c| (i, c))).map(|(i, c)| a[i * n + c].clone()).collect();
                let t = r.mul(&a[j], &det(r, n - 1, &minor));
                acc = if j % 2 == 0 { r.add(&acc, &t) } else { r.sub(&acc, &t) };
            }
            acc
        }
    }
}

/// Searches `GL_n(GR(p^m, r))` for `g` with `δ σ(g) = g B`, i.e.
/// `g^{-1} δ g^σ = B` mod `p^m`.
fn sigma_conjugate_by_search(d: &PadicMatrix, b: &PadicMatrix, m: u32) -> bool {
    let (p, r, n) = (d.p(), d.r(), d.n());
    let ring = GaloisRing::new(p, m, r).unwrap();
    let red = |x: &PadicMatrix| -> Vec<El> { x.entries().iter().map(|e| x.ring().truncate(e, m)).collect() };
    let (dm, bm) = (red(d), red(b));
    let elems: Vec<El> = {
        let pm = ring.pm();
        let total = pm.pow(r as u32);
        (0..total).map(|mut t| (0..r).map(|_| { let c = t % pm; t /= pm; c }).collect()).collect()
    };
    let mul = |a: &[El], c: &[El]| -> Vec<El> {
        (0..n * n)
            .map(|ij| (0..n).fold(ring.zero(), |acc, l| ring.add(&acc, &ring.mul(&a[ij / n * n + l], &c[l * n + ij % n]))))
            .collect()
    };
    let count = elems.len().pow((n * n) as u32);
    (0..count).any(|mut t| {
        let g: Vec<El> = (0..n * n).map(|_| { let e = elems[t % elems.len()].clone(); t /= elems.len(); e }).collect();
        if !ring.is_unit(&det(&ring, n, &g)) {
            return false;
        }
        let gs: Vec<El> = g.iter().map(|x| ring.frobenius(x)).collect();
        mul(&dm, &gs) == mul(&g, &bm)
    })
}

#[test]
fn elementary_divisors() {
    for r in [1, 2] {
        assert_eq!(smith_normal_form(&ints(2, r, &[vec![1, 0], vec![0, 1]])).unwrap(), vec![0, 0]);
        assert_eq!(smith_normal_form(&ints(2, r, &[vec![2, 0], vec![0, 1]])).unwrap(), vec![0, 1]);
        assert_eq!(smith_normal_form(&ints(3, r, &[vec![0, 3], vec![1, 0]])).unwrap(), vec![0, 1]);
    }
    let d = ints(2, 1, &[vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    assert!(double_coset_membership(&d).unwrap());
    assert!(!double_coset_membership(&ints(2, 1, &[vec![1, 0], vec![0, 1]])).unwrap());
    assert!(!double_coset_membership(&ints(2, 1, &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 1]])).unwrap());
    // denominators shift every divisor
    let input = PadicInput { denom: 1, ..ints(2, 1, &[vec![2, 0], vec![0, 4]]).to_input() };
    assert_eq!(smith_normal_form(&PadicMatrix::from_input(&input, 10).unwrap()).unwrap(), vec![0, 1]);
    // det ≡ 0 mod p^N
    assert!(matches!(smith_normal_form(&ints(2, 1, &[vec![1024, 0], vec![0, 1]])), Err(PadicError::Precision(_))));
}

#[test]
fn newton_polygons() {
    let r = GaloisRing::new(5, 8, 1).unwrap();
    let c = |v: &[i64]| -> Vec<El> { v.iter().map(|&x| r.from_int(x)).collect() };
    let np = newton_polygon(&r, &c(&[-5, 0, 1])).unwrap();
    assert_eq!(np.segments.len(), 1);
    assert_eq!((np.segments[0].slope.clone(), np.segments[0].multiplicity), (lk_exact::q_frac(1, 2), 2));
    let np = newton_polygon(&r, &c(&[5, -6, 1])).unwrap();
    assert_eq!(np.multiplicity(&lk_exact::q(0)), 1);
    assert_eq!(np.multiplicity(&lk_exact::q(1)), 1);
    assert_eq!(newton_polygon(&r, &c(&[-3, 1])).unwrap().multiplicity(&lk_exact::q(0)), 1);
    assert!(newton_polygon(&r, &c(&[0, 1])).is_err());
    assert!(newton_polygon(&r, &c(&[1, 2])).is_err());
}

#[test]
fn heights() {
    assert_eq!(height_of_delta(&ints(2, 1, &[vec![2, 0], vec![0, 1]])).unwrap(), 1);
    assert_eq!(height_of_delta(&ints(2, 1, &[vec![0, 2], vec![1, 0]])).unwrap(), 2);
    for r in 1..=3 {
        assert_eq!(height_of_delta(&ints(3, r, &[vec![3, 0], vec![0, 2]])).unwrap(), 1, "r={r}");
        let np = norm_polygon(&ints(3, r, &[vec![3, 0], vec![0, 2]])).unwrap();
        assert_eq!(np.weighted_sum(), lk_exact::q(r as i64));
    }
    // a non-base unit: δ = diag(p, x) over GR(., 2)
    let d = gr(2, 2, 10, &[vec![vec![2, 0], vec![0, 0]], vec![vec![0, 0], vec![0, 1]]]);
    assert_eq!(height_of_delta(&d).unwrap(), 1);
    // height 3 in GL_3: the companion matrix of T^3 − p
    let c = ints(2, 1, &[vec![0, 0, 2], vec![1, 0, 0], vec![0, 1, 0]]);
    assert_eq!(height_of_delta(&c).unwrap(), 3);
}

#[test]
fn documented_splits_match_by_search() {
    let cases = [
        ints(2, 1, &[vec![2, 0], vec![0, 1]]),
        ints(3, 1, &[vec![3, 0], vec![0, 2]]),
        ints(2, 1, &[vec![0, 2], vec![1, 0]]),
        ints(3, 1, &[vec![3, 1], vec![0, 2]]),
        ints(2, 1, &[vec![2, 1], vec![0, 1]]),
        ints(2, 1, &[vec![0, 2], vec![1, 1]]),
        ints(2, 1, &[vec![1, 1, 0], vec![0, 0, 2], vec![0, 1, 1]]),
        gr(2, 2, 10, &[vec![vec![2, 0], vec![0, 1]], vec![vec![0, 0], vec![1, 1]]]),
        gr(2, 2, 10, &[vec![vec![0, 1], vec![2, 0]], vec![vec![1, 0], vec![0, 0]]]),
    ];
    for d in &cases {
        let s = etale_split(d).unwrap();
        assert_eq!(s.k, height_of_delta(d).unwrap());
        assert_eq!(d.sigma_conjugate(&s.conjugator).unwrap(), s.block_form());
        let levels: &[u32] = if d.r() == 1 && d.p() == 2 && d.n() == 2 { &[1, 2] } else { &[1] };
        for &m in levels {
            assert!(sigma_conjugate_by_search(d, &s.block_form(), m), "{:?} at m={m}", d.to_input());
        }
    }
    // δ₂′ ≡ (u) for the upper-triangular example
    let s = etale_split(&ints(3, 1, &[vec![3, 1], vec![0, 2]])).unwrap();
    let one = ints(3, 1, &[vec![2]]);
    assert!(sigma_conjugate_by_search(&s.delta2, &one, 1));
    assert!(!sigma_conjugate_by_search(&s.delta2, &ints(3, 1, &[vec![1]]), 1));
}

#[test]
fn split_errors() {
    let input = PadicInput { denom: 1, ..ints(2, 1, &[vec![4, 0], vec![0, 2]]).to_input() };
    let d = PadicMatrix::from_input(&input, 10).unwrap();
    assert!(matches!(etale_split(&d), Err(PadicError::Invalid(_))));
    let tiny = PadicMatrix::from_int_rows(2, 1, 1, &[vec![0, 0], vec![1, 0]]).unwrap();
    assert!(etale_split(&tiny).is_err());
}

#[test]
fn ellipticity() {
    assert!(!is_elliptic(&ints(2, 1, &[vec![1, 0], vec![0, 2]])).unwrap().elliptic);
    assert!(is_elliptic(&ints(2, 1, &[vec![0, 2], vec![1, 0]])).unwrap().elliptic);
    for p in [3u64, 5, 7, 11] {
        for u in 1..p as i64 {
            let square = (0..p as i64).any(|y| (y * y - u).rem_euclid(p as i64) == 0);
            let e = is_elliptic(&ints(p, 1, &[vec![0, u], vec![1, 0]])).unwrap();
            assert_eq!(e.elliptic, !square, "p={p} u={u}");
        }
    }
    assert!(is_elliptic(&ints(2, 1, &[vec![0, 0, 2], vec![1, 0, 0], vec![0, 1, 0]])).unwrap().elliptic);
    // T^3 − T − 1 is irreducible mod 3 and has no root in Z_3
    assert!(is_elliptic(&ints(3, 1, &[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]])).unwrap().elliptic);
    // (T − 1)(T^2 − 2) over Q_3
    let e = is_elliptic(&ints(3, 1, &[vec![1, 0, 0], vec![0, 0, 2], vec![0, 1, 0]])).unwrap();
    assert_eq!((e.elliptic, e.method), (false, EllipticMethod::RootFound));
    assert!(matches!(is_elliptic(&ints(2, 1, &vec![vec![1; 4]; 4])), Err(PadicError::Unsupported(_))));
    let d = gr(2, 2, 10, &[vec![vec![0, 1], vec![0, 0]], vec![vec![0, 0], vec![1, 0]]]);
    assert!(matches!(is_elliptic(&d), Err(PadicError::Invalid(_))));
}

#[test]
fn json_round_trip() {
    let json = r#"{"p":3,"r":2,"precision":7,"denom":0,"entries":[[3,[0,1]],[1,2]]}"#;
    let d = PadicMatrix::from_input(&serde_json::from_str(json).unwrap(), 10).unwrap();
    let back: PadicInput = serde_json::from_str(&serde_json::to_string(&d.to_input()).unwrap()).unwrap();
    assert_eq!(PadicMatrix::from_input(&back, 10).unwrap(), d);
    assert_eq!(default_precision(2, 2, 1), 9);
}

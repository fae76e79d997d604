use lk_padic::PadicMatrix;
use lk_ring::GaloisRing;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// `Small` is the acceptance matrix; `Smoke` keeps one or two cases of each
/// family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Matrix {
    Small,
    Smoke,
}

impl Matrix {
    fn pick<T: Clone>(self, all: &[T], smoke: usize) -> Vec<T> {
        match self {
            Matrix::Small => all.to_vec(),
            Matrix::Smoke => all[..smoke.min(all.len())].to_vec(),
        }
    }

    /// `(n, p, m, r)` for the norm map and convolution checks.
    pub fn norm_cases(self) -> Vec<(usize, u64, u32, usize)> {
        self.pick(&[(1, 2, 2, 2), (1, 3, 1, 2), (2, 2, 1, 2), (2, 3, 1, 2), (2, 2, 1, 3)], 2)
    }

    /// `(k, p, m)` for flag models, `I_k^0` and summand posets.
    pub fn level_cases(self) -> Vec<(usize, u64, u32)> {
        self.pick(
            &[(1, 2, 1), (2, 2, 1), (1, 3, 1), (2, 3, 1), (1, 2, 2), (3, 2, 1), (2, 2, 2), (1, 3, 2), (3, 3, 1), (2, 3, 2), (3, 2, 2), (3, 3, 2)],
            4,
        )
    }

    /// `(n, p, m)` for the dual-route consistency and invariance checks.
    pub fn phi_cases(self) -> Vec<(usize, u64, u32)> {
        self.pick(&[(2, 2, 1), (2, 3, 1), (2, 2, 2), (2, 3, 2)], 1)
    }

    pub fn r_max(self, full: u32) -> u32 {
        match self {
            Matrix::Small => full,
            Matrix::Smoke => 1,
        }
    }

    /// `(n, p, r)` for the double-coset volume.
    pub fn volume_cases(self) -> Vec<(usize, u64, usize)> {
        let mut all = Vec::new();
        for n in 1..=3 {
            for p in [2, 3] {
                for r in 1..=2 {
                    all.push((n, p, r));
                }
            }
        }
        self.pick(&all, 4)
    }
}

/// `δ₀` in `K diag(p, 1, …, 1) K` over `GR(p^10, r)` covering every height:
/// `diag(p, u)`-type elements have height 1, the `[[0, p], [1, *]]` family
/// height 2, plus non-base entries when `r = 2`.
pub fn deltas(p: u64, n: usize, r: usize) -> Vec<PadicMatrix> {
    let ring = Arc::new(GaloisRing::new(p, 10, r).expect("small ring"));
    let m = |rows: &[Vec<Vec<u64>>]| {
        let e = rows.iter().flatten().map(|c| ring.from_coeffs(c).expect("reduced")).collect();
        PadicMatrix::new(ring.clone(), rows.len(), 0, e).expect("square")
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
            if r >= 2 {
                let mut x = vec![0; r];
                x[1] = 1;
                out.push(m(&[vec![c(p), c(0)], vec![c(0), x.clone()]]));
                out.push(m(&[vec![c(0), c(p)], vec![x, c(0)]]));
            }
            out
        }
    }
}

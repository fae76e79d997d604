use crate::error::PadicError;
use crate::matrix::{El, PadicMatrix};
use lk_ring::GaloisRing;

/// Valuations of the entries of `a` (`rows × cols`) after diagonalization by
/// invertible row and column operations, in elimination order. Entries that
/// vanish at the precision are reported as `None`.
pub(crate) fn diagonal_valuations(r: &GaloisRing, a: &[El], rows: usize, cols: usize) -> Vec<Option<u32>> {
    let mut m = a.to_vec();
    let n = rows.min(cols);
    let mut out = Vec::with_capacity(n);
    for t in 0..n {
        let mut best: Option<(u32, usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = r.valuation(&m[i * cols + j]);
                if v < r.m() && best.map_or(true, |b| v < b.0) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((v, i, j)) = best else {
            out.extend((t..n).map(|_| None));
            break;
        };
        for c in 0..cols {
            m.swap(t * cols + c, i * cols + c);
        }
        for row in 0..rows {
            m.swap(row * cols + t, row * cols + j);
        }
        let u = r.inv(&r.div_p_pow(&m[t * cols + t], v)).expect("unit part");
        for i in t + 1..rows {
            let x = &m[i * cols + t];
            if r.is_zero(x) {
                continue;
            }
            let f = r.mul(&r.div_p_pow(x, v), &u);
            for c in t..cols {
                let s = r.mul(&f, &m[t * cols + c]);
                m[i * cols + c] = r.sub(&m[i * cols + c], &s);
            }
        }
        for j in t + 1..cols {
            let x = &m[t * cols + j];
            if r.is_zero(x) {
                continue;
            }
            let f = r.mul(&r.div_p_pow(x, v), &u);
            for row in t..rows {
                let s = r.mul(&f, &m[row * cols + t]);
                m[row * cols + j] = r.sub(&m[row * cols + j], &s);
            }
        }
        out.push(Some(v));
    }
    out
}

/// Elementary divisor valuations `e_1 ≤ ⋯ ≤ e_n` of `A`, so that
/// `A ∈ GL_n(Z_{p^r}) diag(p^{e_1}, …, p^{e_n}) GL_n(Z_{p^r})`.
pub fn smith_normal_form(a: &PadicMatrix) -> Result<Vec<i64>, PadicError> {
    let vals = diagonal_valuations(a.ring(), a.entries(), a.n(), a.n());
    if vals.iter().any(Option::is_none) {
        return Err(PadicError::Precision(format!(
            "det has valuation at least the precision {} (a diagonal entry vanishes mod p^N)",
            a.precision()
        )));
    }
    let mut e: Vec<i64> = vals.into_iter().map(|v| v.unwrap() as i64 - a.denom() as i64).collect();
    e.sort_unstable();
    Ok(e)
}

/// Whether `δ ∈ GL_n(Z_{p^r}) diag(p, 1, …, 1) GL_n(Z_{p^r})`.
pub fn double_coset_membership(d: &PadicMatrix) -> Result<bool, PadicError> {
    let e = smith_normal_form(d)?;
    let n = e.len();
    Ok(n > 0 && e[..n - 1].iter().all(|&x| x == 0) && e[n - 1] == 1)
}

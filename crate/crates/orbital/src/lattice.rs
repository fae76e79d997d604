//! Full-rank `Z_{p^r}`-lattices in `Q_{p^r}^n`, as `p^s` times the column
//! span of an integral matrix in Hermite normal form.
//!
//! The HNF `A` is upper triangular with `A_ii = p^{e_i}` and every entry
//! `A_ij` (`i < j`) reduced: each coordinate lies in `[0, p^{e_i})`. It is
//! primitive when some entry is a unit, and `s` is then determined.

use crate::error::OrbitalError;
use lk_padic::{smith_normal_form, PadicMatrix};
use lk_ring::{limits, GaloisRing};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

pub(crate) type El = Vec<u64>;

/// `L = p^{scale} · A Z_{p^r}^n`; `basis` holds the rows of `A` as
/// coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeRep {
    pub scale: i64,
    pub exps: Vec<u32>,
    pub basis: Vec<Vec<Vec<u64>>>,
}

/// A primitive HNF together with the least `d` such that `p^d Λ₀ ⊆ L`.
#[derive(Clone, Debug)]
pub(crate) struct Primitive {
    pub exps: Vec<u32>,
    pub a: Vec<El>,
    pub depth: u32,
}

impl LatticeRep {
    pub fn n(&self) -> usize {
        self.exps.len()
    }

    /// `[Λ₀ : L]` as a power of `p^r`, negative when `L ⊋ Λ₀`.
    pub fn index_exponent(&self) -> i64 {
        self.exps.iter().map(|&e| e as i64).sum::<i64>() + self.scale * self.n() as i64
    }

    /// Elementary divisors of `L` relative to `Λ₀`.
    pub fn elementary_divisors(&self, p: u64, r: usize) -> Result<Vec<i64>, OrbitalError> {
        let n = self.n();
        let top = self.exps.iter().copied().max().unwrap_or(0) + 2;
        let ring = Arc::new(GaloisRing::new(p, top, r)?);
        let entries = self.basis.iter().flatten().map(|c| ring.from_coeffs(c)).collect::<Result<Vec<_>, _>>()?;
        let m = PadicMatrix::new(ring, n, 0, entries)?;
        Ok(smith_normal_form(&m)?.into_iter().map(|e| e + self.scale).collect())
    }
}

/// Largest `N` with `p^N ≤ 2^62`.
fn max_precision(p: u64) -> u32 {
    let mut n = 0;
    let mut x: u128 = 1;
    while x * p as u128 <= 1 << 62 {
        x *= p as u128;
        n += 1;
    }
    n
}

/// A ring of precision `needed`, or a precision error naming `what`.
pub(crate) fn work_ring(p: u64, r: usize, needed: u32, what: &str) -> Result<Arc<GaloisRing>, OrbitalError> {
    let cap = max_precision(p);
    if needed > cap {
        return Err(lk_padic::PadicError::Precision(format!("{what} needs p^{needed}, beyond p^{cap} <= 2^62")).into());
    }
    Ok(Arc::new(GaloisRing::new(p, needed.max(1), r)?))
}

/// `p^k A^{-1}` for upper-triangular `A` with diagonal `p^{e_i}`, if it is
/// integral. Digits lost to the divisions: at most `Σ e_i`.
pub(crate) fn scaled_inverse(ring: &GaloisRing, n: usize, exps: &[u32], a: &[El], k: u32) -> Option<Vec<El>> {
    let mut b = vec![ring.zero(); n * n];
    let pk = ring.mul_p_pow(&ring.one(), k);
    for c in 0..n {
        for i in (0..n).rev() {
            let mut t = if i == c { pk.clone() } else { ring.zero() };
            for j in i + 1..n {
                t = ring.sub(&t, &ring.mul(&a[i * n + j], &b[j * n + c]));
            }
            if ring.valuation(&t) < exps[i] {
                return None;
            }
            b[i * n + c] = ring.div_p_pow(&t, exps[i]);
        }
    }
    Some(b)
}

/// Least `d` with `p^d Λ₀ ⊆ A Z^n`; `ring` must have precision above
/// `2 Σ e_i`.
pub(crate) fn containment_depth(ring: &GaloisRing, n: usize, exps: &[u32], a: &[El]) -> u32 {
    let total: u32 = exps.iter().sum();
    let b = scaled_inverse(ring, n, exps, a, total).expect("p^{Σe} A^{-1} is the adjugate up to a unit");
    let v = b.iter().map(|x| ring.valuation(x)).min().unwrap_or(total);
    total - v.min(total)
}

fn candidates_count(n: usize, q: u128, emax: u32) -> u128 {
    (0..n)
        .map(|i| (0..=emax).map(|e| q.saturating_pow(e * (n - 1 - i) as u32)).fold(0u128, u128::saturating_add))
        .fold(1u128, u128::saturating_mul)
}

/// Every HNF with all `e_i ≤ emax`, in lexicographic order of exponents.
pub(crate) fn for_each_hnf(
    ring: &GaloisRing,
    n: usize,
    emax: u32,
    mut visit: impl FnMut(&[u32], &[El]),
) -> Result<(), OrbitalError> {
    let p = ring.p();
    let r = ring.r();
    let q = (p as u128).pow(r as u32);
    limits::check("lattice candidates", candidates_count(n, q, emax))?;
    let mut exps = vec![0u32; n];
    loop {
        // slots above the diagonal, row by row
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let radices: Vec<u64> = slots.iter().map(|&(i, _)| p.pow(exps[i])).collect();
        let mut digits = vec![vec![0u64; r]; slots.len()];
        let mut a = vec![ring.zero(); n * n];
        for i in 0..n {
            a[i * n + i] = ring.mul_p_pow(&ring.one(), exps[i]);
        }
        'inner: loop {
            for (s, &(i, j)) in slots.iter().enumerate() {
                a[i * n + j] = digits[s].clone();
            }
            visit(&exps, &a);
            // odometer over the coordinates of every slot
            for s in 0..slots.len() {
                for c in 0..r {
                    digits[s][c] += 1;
                    if digits[s][c] < radices[s] {
                        continue 'inner;
                    }
                    digits[s][c] = 0;
                }
            }
            break;
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(());
            }
            exps[i] += 1;
            if exps[i] <= emax {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

fn to_rep(ring: &GaloisRing, n: usize, exps: &[u32], a: &[El], shift: i64) -> LatticeRep {
    let t = a.iter().map(|x| ring.valuation(x)).min().unwrap_or(0);
    let basis = (0..n).map(|i| (0..n).map(|j| ring.div_p_pow(&a[i * n + j], t)).collect()).collect();
    LatticeRep { scale: t as i64 + shift, exps: exps.iter().map(|e| e - t).collect(), basis }
}

/// All lattices `p^D Λ₀ ⊆ L ⊆ p^{−D} Λ₀` of `Q_{p^r}^n`, sorted,
/// duplicate-free.
pub fn enumerate_cosets(n: usize, p: u64, r: usize, depth: u32) -> Result<Vec<LatticeRep>, OrbitalError> {
    if n == 0 {
        return Err(OrbitalError::Invalid("n must be positive".into()));
    }
    let emax = 2 * depth;
    let ring = work_ring(p, r, 2 * n as u32 * emax + 2, "lattice enumeration")?;
    let mut out = Vec::new();
    for_each_hnf(&ring, n, emax, |exps, a| {
        if scaled_inverse(&ring, n, exps, a, emax).is_some() {
            out.push(to_rep(&ring, n, exps, a, -(depth as i64)));
        }
    })?;
    out.sort();
    Ok(out)
}

/// Primitive lattices `p^D Λ₀ ⊆ L ⊆ Λ₀`, one per homothety class of lattices
/// within distance `D` of `Λ₀`.
pub(crate) fn homothety_ball(ring: &GaloisRing, n: usize, depth: u32) -> Result<Vec<Primitive>, OrbitalError> {
    let mut out = Vec::new();
    for_each_hnf(ring, n, depth, |exps, a| {
        if a.iter().all(|x| ring.valuation(x) > 0) {
            return;
        }
        let d = containment_depth(ring, n, exps, a);
        if d <= depth {
            out.push(Primitive { exps: exps.to_vec(), a: a.to_vec(), depth: d });
        }
    })?;
    Ok(out)
}

/// Canonical form of the lattice spanned by the columns of an invertible
/// `p^{-denom}`-scaled matrix.
pub fn hnf_of(m: &PadicMatrix) -> Result<LatticeRep, OrbitalError> {
    let ring = m.ring().clone();
    let n = m.n();
    let mut a: Vec<El> = m.entries().to_vec();
    let mut exps = vec![0u32; n];
    for i in (0..n).rev() {
        let piv = (0..=i)
            .min_by_key(|&j| ring.valuation(&a[i * n + j]))
            .expect("nonempty");
        let e = ring.valuation(&a[i * n + piv]);
        if e >= ring.m() {
            return Err(lk_padic::PadicError::Precision("basis is singular at this precision".into()).into());
        }
        for row in 0..n {
            a.swap(row * n + piv, row * n + i);
        }
        let unit = ring.inv(&ring.div_p_pow(&a[i * n + i], e))?;
        for row in 0..n {
            a[row * n + i] = ring.mul(&a[row * n + i], &unit);
        }
        for j in 0..i {
            let c = ring.div_p_pow(&a[i * n + j], e);
            for row in 0..n {
                let t = ring.mul(&c, &a[row * n + i]);
                a[row * n + j] = ring.sub(&a[row * n + j], &t);
            }
        }
        exps[i] = e;
    }
    for i in (0..n).rev() {
        let d = ring.p().pow(exps[i]);
        for j in i + 1..n {
            let x = &a[i * n + j];
            let quot: El = x.iter().map(|&c| c / d).collect();
            for row in 0..=i {
                let t = ring.mul(&quot, &a[row * n + i]);
                a[row * n + j] = ring.sub(&a[row * n + j], &t);
            }
        }
    }
    let needed = 2 * exps.iter().sum::<u32>() + 1;
    if ring.m() < needed {
        return Err(lk_padic::PadicError::Precision(format!("HNF needs precision {needed}, have {}", ring.m())).into());
    }
    Ok(to_rep(&ring, n, &exps, &a, -(m.denom() as i64)))
}

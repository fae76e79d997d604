//! Square and rectangular matrices over a [`FiniteRing`], stored row-major as
//! `Vec<u32>` of element indices.

use crate::finite::FiniteRing;

pub type Mat = Vec<u32>;

pub fn identity(n: usize) -> Mat {
    let mut a = vec![0; n * n];
    for i in 0..n {
        a[i * n + i] = 1;
    }
    a
}

pub fn scalar(n: usize, c: u32) -> Mat {
    let mut a = vec![0; n * n];
    for i in 0..n {
        a[i * n + i] = c;
    }
    a
}

/// `n x n` matrix with a single 1 at `(i, j)`.
pub fn unit(n: usize, i: usize, j: usize) -> Mat {
    let mut a = vec![0; n * n];
    a[i * n + j] = 1;
    a
}

pub fn dim(a: &[u32]) -> usize {
    let n = (a.len() as f64).sqrt().round() as usize;
    debug_assert_eq!(n * n, a.len());
    n
}

/// `(rows x inner) * (inner x cols)`.
pub fn mul_rect(r: &FiniteRing, a: &[u32], b: &[u32], rows: usize, inner: usize, cols: usize) -> Mat {
    let mut c = vec![0u32; rows * cols];
    for i in 0..rows {
        for k in 0..inner {
            let x = a[i * inner + k];
            if x == 0 {
                continue;
            }
            for j in 0..cols {
                let y = b[k * cols + j];
                if y != 0 {
                    let t = r.mul(x, y);
                    c[i * cols + j] = r.add(c[i * cols + j], t);
                }
            }
        }
    }
    c
}

pub fn mul(r: &FiniteRing, a: &[u32], b: &[u32]) -> Mat {
    let n = dim(a);
    mul_rect(r, a, b, n, n, n)
}

pub fn add(r: &FiniteRing, a: &[u32], b: &[u32]) -> Mat {
    a.iter().zip(b).map(|(&x, &y)| r.add(x, y)).collect()
}

pub fn sub(r: &FiniteRing, a: &[u32], b: &[u32]) -> Mat {
    a.iter().zip(b).map(|(&x, &y)| r.sub(x, y)).collect()
}

pub fn scale(r: &FiniteRing, a: &[u32], c: u32) -> Mat {
    a.iter().map(|&x| r.mul(x, c)).collect()
}

pub fn frob(r: &FiniteRing, a: &[u32]) -> Mat {
    a.iter().map(|&x| r.frob(x)).collect()
}

pub fn frob_pow(r: &FiniteRing, a: &[u32], k: usize) -> Mat {
    a.iter().map(|&x| r.frob_pow(x, k)).collect()
}

pub fn transpose_rect(a: &[u32], rows: usize, cols: usize) -> Mat {
    let mut t = vec![0; rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            t[j * rows + i] = a[i * cols + j];
        }
    }
    t
}

pub fn transpose(a: &[u32]) -> Mat {
    let n = dim(a);
    transpose_rect(a, n, n)
}

/// Gauss-Jordan inverse over the local ring: a matrix is invertible iff
/// every elimination column offers a unit pivot.
pub fn inv(r: &FiniteRing, a: &[u32]) -> Option<Mat> {
    let n = dim(a);
    let mut m = a.to_vec();
    let mut e = identity(n);
    for c in 0..n {
        let piv = (c..n).find(|&i| r.is_unit(m[i * n + c]))?;
        if piv != c {
            for j in 0..n {
                m.swap(piv * n + j, c * n + j);
                e.swap(piv * n + j, c * n + j);
            }
        }
        let u = r.inv(m[c * n + c]).unwrap();
        for j in 0..n {
            m[c * n + j] = r.mul(m[c * n + j], u);
            e[c * n + j] = r.mul(e[c * n + j], u);
        }
        for i in 0..n {
            if i == c {
                continue;
            }
            let f = m[i * n + c];
            if f == 0 {
                continue;
            }
            for j in 0..n {
                m[i * n + j] = r.sub(m[i * n + j], r.mul(f, m[c * n + j]));
                e[i * n + j] = r.sub(e[i * n + j], r.mul(f, e[c * n + j]));
            }
        }
    }
    Some(e)
}

pub fn is_invertible(r: &FiniteRing, a: &[u32]) -> bool {
    r.is_unit(det(r, a))
}

/// Determinant by cofactor expansion (small `n` only).
pub fn det(r: &FiniteRing, a: &[u32]) -> u32 {
    let n = dim(a);
    match n {
        0 => 1,
        1 => a[0],
        _ => {
            let mut acc = 0;
            for j in 0..n {
                let x = a[j];
                if x == 0 {
                    continue;
                }
                let minor: Mat = (1..n)
                    .flat_map(|i| (0..n).filter(move |&k| k != j).map(move |k| (i, k)))
                    .map(|(i, k)| a[i * n + k])
                    .collect();
                let t = r.mul(x, det(r, &minor));
                acc = if j % 2 == 0 { r.add(acc, t) } else { r.sub(acc, t) };
            }
            acc
        }
    }
}

/// Base-`q` digits of the entries, first entry most significant, as an
/// integer; numeric order of keys is lexicographic order of matrices.
pub fn key(r: &FiniteRing, a: &[u32]) -> u128 {
    let q = r.size() as u128;
    a.iter().fold(0u128, |acc, &x| acc * q + x as u128)
}

pub fn from_key(r: &FiniteRing, mut k: u128, len: usize) -> Mat {
    let q = r.size() as u128;
    let mut a = vec![0; len];
    for i in (0..len).rev() {
        a[i] = (k % q) as u32;
        k /= q;
    }
    a
}

/// Whether keys of `len`-entry matrices fit in `u128`.
pub fn key_fits(r: &FiniteRing, len: usize) -> bool {
    (r.size() as u128).checked_pow(len as u32).is_some()
}

/// Every `n x n` matrix over `r`, in key order.
pub fn all_matrices(r: &FiniteRing, n: usize) -> impl Iterator<Item = Mat> + '_ {
    let total = (r.size() as u128).pow((n * n) as u32);
    (0..total).map(move |k| from_key(r, k, n * n))
}

/// Entrywise map into another table ring given an index map.
pub fn map(a: &[u32], f: impl Fn(u32) -> u32) -> Mat {
    a.iter().map(|&x| f(x)).collect()
}

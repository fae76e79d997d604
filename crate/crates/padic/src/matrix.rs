use crate::error::PadicError;
use lk_ring::GaloisRing;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

pub type El = Vec<u64>;

/// Working precision used when none is given: `m + n + r + 4` for level `m`.
pub fn default_precision(m: u32, n: usize, r: usize) -> u32 {
    m + n as u32 + r as u32 + 4
}

/// `p^{-denom}` times an `n × n` matrix over `GR(p^N, r)`, row-major.
#[derive(Clone, Debug)]
pub struct PadicMatrix {
    n: usize,
    ring: Arc<GaloisRing>,
    denom: u32,
    entries: Vec<El>,
}

/// A Galois-ring entry: an integer, or its coefficient vector in the
/// canonical power basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Coeffs(Vec<i64>),
}

/// JSON form `{"p":2,"r":1,"precision":8,"denom":0,"entries":[[0,2],[1,0]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicInput {
    pub p: u64,
    pub r: usize,
    #[serde(default)]
    pub precision: Option<u32>,
    #[serde(default)]
    pub denom: u32,
    pub entries: Vec<Vec<Entry>>,
}

fn reduce_int(ring: &GaloisRing, x: i64) -> u64 {
    x.rem_euclid(ring.pm() as i64) as u64
}

impl PadicMatrix {
    pub fn new(ring: Arc<GaloisRing>, n: usize, denom: u32, entries: Vec<El>) -> Result<PadicMatrix, PadicError> {
        if entries.len() != n * n || entries.iter().any(|e| e.len() != ring.r()) {
            return Err(PadicError::Invalid(format!("expected {n} x {n} entries over {}", ring.params().label())));
        }
        if denom >= ring.m() {
            return Err(PadicError::Precision(format!("denominator p^{denom} leaves no precision at N = {}", ring.m())));
        }
        Ok(PadicMatrix { n, ring, denom, entries })
    }

    pub fn from_int_rows(p: u64, r: usize, precision: u32, rows: &[Vec<i64>]) -> Result<PadicMatrix, PadicError> {
        let ring = Arc::new(GaloisRing::new(p, precision, r)?);
        let n = rows.len();
        if rows.iter().any(|row| row.len() != n) {
            return Err(PadicError::Invalid("matrix is not square".into()));
        }
        let entries = rows.iter().flatten().map(|&x| ring.from_int(x)).collect();
        PadicMatrix::new(ring, n, 0, entries)
    }

    pub fn from_input(input: &PadicInput, default_n: u32) -> Result<PadicMatrix, PadicError> {
        let ring = Arc::new(GaloisRing::new(input.p, input.precision.unwrap_or(default_n), input.r)?);
        let n = input.entries.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in &input.entries {
            if row.len() != n {
                return Err(PadicError::Invalid("matrix is not square".into()));
            }
            for e in row {
                entries.push(match e {
                    Entry::Int(x) => ring.from_int(*x),
                    Entry::Coeffs(c) => {
                        if c.len() > ring.r() {
                            return Err(PadicError::Invalid(format!("entry has {} coefficients, r = {}", c.len(), ring.r())));
                        }
                        let mut v: El = c.iter().map(|&x| reduce_int(&ring, x)).collect();
                        v.resize(ring.r(), 0);
                        v
                    }
                });
            }
        }
        PadicMatrix::new(ring, n, input.denom, entries)
    }

    pub fn to_input(&self) -> PadicInput {
        let entries = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let e = self.entry(i, j);
                        if self.ring.is_base(e) {
                            Entry::Int(e[0] as i64)
                        } else {
                            Entry::Coeffs(e.iter().map(|&x| x as i64).collect())
                        }
                    })
                    .collect()
            })
            .collect();
        PadicInput { p: self.ring.p(), r: self.ring.r(), precision: Some(self.ring.m()), denom: self.denom, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn ring(&self) -> &Arc<GaloisRing> {
        &self.ring
    }
    pub fn p(&self) -> u64 {
        self.ring.p()
    }
    pub fn r(&self) -> usize {
        self.ring.r()
    }
    pub fn precision(&self) -> u32 {
        self.ring.m()
    }
    pub fn denom(&self) -> u32 {
        self.denom
    }

    /// `N − d`: how many `p`-adic digits of the integral numerator are known
    /// beyond the denominator.
    pub fn effective_precision(&self) -> u32 {
        self.ring.m() - self.denom
    }

    pub fn entry(&self, i: usize, j: usize) -> &El {
        &self.entries[i * self.n + j]
    }

    /// Integral numerator, row-major.
    pub fn entries(&self) -> &[El] {
        &self.entries
    }

    pub fn is_integral(&self) -> bool {
        self.denom == 0
    }

    pub fn require_precision(&self, floor: u32, what: &str) -> Result<(), PadicError> {
        if self.effective_precision() < floor {
            return Err(PadicError::Precision(format!(
                "{what} needs effective precision {floor}, have {}",
                self.effective_precision()
            )));
        }
        Ok(())
    }

    pub fn with_entries(&self, entries: Vec<El>) -> PadicMatrix {
        PadicMatrix { entries, ..self.clone() }
    }

    /// `g^{-1} · self · g^σ` for an integral invertible `g` over the same
    /// ring.
    pub fn sigma_conjugate(&self, g: &PadicMatrix) -> Result<PadicMatrix, PadicError> {
        let r = &*self.ring;
        let gi = inv(r, self.n, &g.entries)?;
        let gs = sigma(r, &g.entries);
        Ok(self.with_entries(mul(r, self.n, &mul(r, self.n, &gi, &self.entries), &gs)))
    }

    /// `δ δ^σ ⋯ δ^{σ^{r−1}}` (numerator only; the denominator becomes
    /// `r·d`).
    pub fn norm(&self) -> Result<PadicMatrix, PadicError> {
        let r = &*self.ring;
        let mut acc = identity(r, self.n);
        let mut cur = self.entries.clone();
        for _ in 0..r.r() {
            acc = mul(r, self.n, &acc, &cur);
            cur = sigma(r, &cur);
        }
        let denom = self.denom * r.r() as u32;
        if denom >= r.m() {
            return Err(PadicError::Precision("norm denominator exceeds the precision".into()));
        }
        Ok(PadicMatrix { entries: acc, denom, ..self.clone() })
    }

    /// Uniformly random element of `GL_n(GR(p^N, r))`.
    pub fn random_invertible<R: Rng>(ring: Arc<GaloisRing>, n: usize, rng: &mut R) -> PadicMatrix {
        let pm = ring.pm();
        loop {
            let entries: Vec<El> = (0..n * n).map(|_| (0..ring.r()).map(|_| rng.gen_range(0..pm)).collect()).collect();
            if inv(&ring, n, &entries).is_ok() {
                return PadicMatrix { n, ring, denom: 0, entries };
            }
        }
    }

    /// The same matrix with denominator 0, over `GR(p^{N−d}, r)`; every
    /// numerator entry must be divisible by `p^d`.
    pub fn integral_part(&self) -> Result<PadicMatrix, PadicError> {
        if self.denom == 0 {
            return Ok(self.clone());
        }
        let r = &*self.ring;
        if self.entries.iter().any(|e| r.valuation(e) < self.denom) {
            return Err(PadicError::Invalid("matrix is not integral".into()));
        }
        let ring = Arc::new(GaloisRing::new(r.p(), self.effective_precision(), r.r())?);
        let m = ring.m();
        let entries = self.entries.iter().map(|e| r.truncate(&r.div_p_pow(e, self.denom), m)).collect();
        PadicMatrix::new(ring, self.n, 0, entries)
    }

    /// Entries reduced to `GR(p^m, r)` as rows of coefficient vectors.
    pub fn reduce_rows(&self, m: u32) -> Vec<Vec<Vec<u64>>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.ring.truncate(self.entry(i, j), m)).collect()).collect()
    }
}

impl PartialEq for PadicMatrix {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.ring == o.ring && self.denom == o.denom && self.entries == o.entries
    }
}

pub(crate) fn identity(r: &GaloisRing, n: usize) -> Vec<El> {
    (0..n * n).map(|i| if i / n == i % n { r.one() } else { r.zero() }).collect()
}

pub(crate) fn mul(r: &GaloisRing, n: usize, a: &[El], b: &[El]) -> Vec<El> {
    mul_rect(r, a, b, n, n, n)
}

pub(crate) fn mul_rect(r: &GaloisRing, a: &[El], b: &[El], rows: usize, inner: usize, cols: usize) -> Vec<El> {
    let mut out = vec![r.zero(); rows * cols];
    for i in 0..rows {
        for l in 0..inner {
            let x = &a[i * inner + l];
            if r.is_zero(x) {
                continue;
            }
            for j in 0..cols {
                let t = r.mul(x, &b[l * cols + j]);
                out[i * cols + j] = r.add(&out[i * cols + j], &t);
            }
        }
    }
    out
}

pub(crate) fn sigma(r: &GaloisRing, a: &[El]) -> Vec<El> {
    a.iter().map(|x| r.frobenius(x)).collect()
}

/// Inverse by Gauss-Jordan with unit pivots.
pub(crate) fn inv(r: &GaloisRing, n: usize, a: &[El]) -> Result<Vec<El>, PadicError> {
    let mut m: Vec<El> = a.to_vec();
    let mut out = identity(r, n);
    for c in 0..n {
        let piv = (c..n)
            .find(|&i| r.is_unit(&m[i * n + c]))
            .ok_or_else(|| PadicError::Invalid("matrix is not invertible over the integers".into()))?;
        for j in 0..n {
            m.swap(c * n + j, piv * n + j);
            out.swap(c * n + j, piv * n + j);
        }
        let u = r.inv(&m[c * n + c])?;
        for j in 0..n {
            m[c * n + j] = r.mul(&m[c * n + j], &u);
            out[c * n + j] = r.mul(&out[c * n + j], &u);
        }
        for i in 0..n {
            if i == c || r.is_zero(&m[i * n + c]) {
                continue;
            }
            let f = m[i * n + c].clone();
            for j in 0..n {
                m[i * n + j] = r.sub(&m[i * n + j], &r.mul(&f, &m[c * n + j]));
                out[i * n + j] = r.sub(&out[i * n + j], &r.mul(&f, &out[c * n + j]));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_and_norm() {
        let json = r#"{"p":2,"r":2,"precision":6,"entries":[[0,2],[[0,1],0]]}"#;
        let input: PadicInput = serde_json::from_str(json).unwrap();
        let d = PadicMatrix::from_input(&input, 10).unwrap();
        assert_eq!(d.precision(), 6);
        assert_eq!(d.entry(1, 0), &vec![0, 1]);
        let again = PadicMatrix::from_input(&d.to_input(), 10).unwrap();
        assert_eq!(again, d);
        // [[0,2],[x,0]] [[0,2],[σx,0]] = diag(2σx, 2x) and x + σx = -1 for x^2+x+1
        let nd = d.norm().unwrap();
        let r = d.ring();
        assert!(r.is_zero(nd.entry(0, 1)));
        assert_eq!(r.add(nd.entry(0, 0), nd.entry(1, 1)), r.from_int(-2));
        let bad: PadicInput = serde_json::from_str(r#"{"p":2,"r":1,"entries":[[1,2]]}"#).unwrap();
        assert!(PadicMatrix::from_input(&bad, 8).is_err());
    }
}

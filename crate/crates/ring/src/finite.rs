use crate::error::RingError;
use crate::galois::{GaloisRing, RingParams};

pub const MAX_TABLE_SIZE: u64 = 1024;

/// A small Galois ring with full operation tables.
///
/// Element `i` has coefficients given by the base-`p^m` digits of `i`,
/// constant term first, so for `r = 1` the index is the residue itself and
/// the base ring `Z/p^m` is exactly the indices below `p^m`.
#[derive(Clone, Debug)]
pub struct FiniteRing {
    gr: GaloisRing,
    q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    frob: Vec<u32>,
    val: Vec<u32>,
}

pub const NO_INVERSE: u32 = u32::MAX;

impl PartialEq for FiniteRing {
    fn eq(&self, o: &Self) -> bool {
        self.gr == o.gr
    }
}
impl Eq for FiniteRing {}

impl FiniteRing {
    pub fn new(p: u64, m: u32, r: usize) -> Result<FiniteRing, RingError> {
        Self::from_galois(GaloisRing::new(p, m, r)?)
    }

    pub fn from_params(params: &RingParams) -> Result<FiniteRing, RingError> {
        Self::from_galois(GaloisRing::from_params(params)?)
    }

    pub fn from_galois(gr: GaloisRing) -> Result<FiniteRing, RingError> {
        let q = (gr.pm() as u128).checked_pow(gr.r() as u32).filter(|&q| q <= MAX_TABLE_SIZE as u128);
        let Some(q) = q else {
            return Err(RingError::InvalidParams(format!(
                "{} has more than {MAX_TABLE_SIZE} elements; table ring unavailable",
                gr.params().label()
            )));
        };
        let q = q as u32;
        let mut fr = FiniteRing { gr, q, add: vec![], mul: vec![], neg: vec![], inv: vec![], frob: vec![], val: vec![] };
        let els: Vec<Vec<u64>> = (0..q).map(|i| fr.coeffs(i)).collect();
        let n = q as usize;
        fr.add = vec![0; n * n];
        fr.mul = vec![0; n * n];
        for i in 0..n {
            for j in i..n {
                let s = fr.index(&fr.gr.add(&els[i], &els[j]));
                let t = fr.index(&fr.gr.mul(&els[i], &els[j]));
                fr.add[i * n + j] = s;
                fr.add[j * n + i] = s;
                fr.mul[i * n + j] = t;
                fr.mul[j * n + i] = t;
            }
        }
        fr.neg = els.iter().map(|a| fr.index(&fr.gr.neg(a))).collect();
        fr.inv = els
            .iter()
            .map(|a| fr.gr.inv(a).map(|b| fr.index(&b)).unwrap_or(NO_INVERSE))
            .collect();
        fr.frob = els.iter().map(|a| fr.index(&fr.gr.frobenius(a))).collect();
        fr.val = els.iter().map(|a| fr.gr.valuation(a)).collect();
        Ok(fr)
    }

    pub fn galois(&self) -> &GaloisRing {
        &self.gr
    }
    pub fn params(&self) -> &RingParams {
        self.gr.params()
    }
    pub fn p(&self) -> u64 {
        self.gr.p()
    }
    pub fn m(&self) -> u32 {
        self.gr.m()
    }
    pub fn r(&self) -> usize {
        self.gr.r()
    }
    pub fn pm(&self) -> u64 {
        self.gr.pm()
    }
    /// Number of elements.
    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn coeffs(&self, mut i: u32) -> Vec<u64> {
        let pm = self.pm() as u32;
        (0..self.r())
            .map(|_| {
                let c = i % pm;
                i /= pm;
                c as u64
            })
            .collect()
    }

    pub fn index(&self, c: &[u64]) -> u32 {
        let pm = self.pm();
        c.iter().rev().fold(0u64, |acc, &x| acc * pm + x % pm) as u32
    }

    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.pm() as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }
    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        let i = self.inv[a as usize];
        (i != NO_INVERSE).then_some(i)
    }
    #[inline]
    pub fn is_unit(&self, a: u32) -> bool {
        self.inv[a as usize] != NO_INVERSE
    }
    #[inline]
    pub fn frob(&self, a: u32) -> u32 {
        self.frob[a as usize]
    }
    /// `v_p(a)`, with `m` for zero.
    #[inline]
    pub fn valuation(&self, a: u32) -> u32 {
        self.val[a as usize]
    }

    pub fn frob_pow(&self, a: u32, k: usize) -> u32 {
        (0..k % self.r()).fold(a, |x, _| self.frob(x))
    }

    /// Elements of the fixed ring `Z/p^m` of sigma.
    pub fn is_base(&self, a: u32) -> bool {
        (a as u64) < self.pm()
    }

    /// The image in `GR(p^m2, r)` for `m2 <= m`, as an index of `target`.
    pub fn reduce_to(&self, a: u32, target: &FiniteRing) -> u32 {
        target.index(&self.coeffs(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_agree_with_galois_ring() {
        for (p, m, r) in [(2, 2, 2), (3, 1, 2), (2, 1, 3), (3, 2, 1), (2, 3, 2)] {
            let fr = FiniteRing::new(p, m, r).unwrap();
            let gr = fr.galois().clone();
            for a in 0..fr.size() {
                assert_eq!(fr.index(&fr.coeffs(a)), a);
                for b in 0..fr.size() {
                    assert_eq!(fr.coeffs(fr.mul(a, b)), gr.mul(&fr.coeffs(a), &fr.coeffs(b)));
                    assert_eq!(fr.sub(fr.add(a, b), b), a);
                }
                if let Some(i) = fr.inv(a) {
                    assert_eq!(fr.mul(a, i), 1);
                }
                assert_eq!(fr.frob_pow(a, r), a);
            }
        }
    }

    #[test]
    fn base_ring_is_fixed_by_frobenius() {
        let fr = FiniteRing::new(3, 2, 2).unwrap();
        let fixed: Vec<u32> = (0..fr.size()).filter(|&a| fr.frob(a) == a).collect();
        assert_eq!(fixed, (0..9).collect::<Vec<_>>());
    }

    #[test]
    fn too_large_for_tables() {
        assert!(FiniteRing::new(2, 11, 1).is_err());
        assert!(FiniteRing::new(2, 10, 1).is_ok());
    }
}

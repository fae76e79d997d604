use crate::rational::{q, serde_q, Q};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// `a + b·√p` with exact rational parts. `p` is not serialized; callers
/// carry it alongside (it is always the residue characteristic).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadExt {
    #[serde(skip, default)]
    pub p: i64,
    #[serde(with = "serde_q")]
    pub a: Q,
    #[serde(with = "serde_q")]
    pub b: Q,
}

impl QuadExt {
    pub fn new(p: i64, a: Q, b: Q) -> Self {
        QuadExt { p, a, b }
    }

    pub fn rational(p: i64, a: Q) -> Self {
        QuadExt { p, a, b: Q::zero() }
    }

    pub fn zero(p: i64) -> Self {
        Self::rational(p, Q::zero())
    }

    pub fn one(p: i64) -> Self {
        Self::rational(p, Q::one())
    }

    /// `√p^e`, i.e. `p^{e/2}`.
    pub fn sqrt_p_pow(p: i64, e: i64) -> Self {
        let half = crate::rational::q_pow(p, e.div_euclid(2));
        if e.rem_euclid(2) == 0 {
            Self::rational(p, half)
        } else {
            QuadExt { p, a: Q::zero(), b: half }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn norm(&self) -> Q {
        &self.a * &self.a - q(self.p) * &self.b * &self.b
    }

    /// `None` for zero. `p` is never a square, so the norm vanishes only at 0.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(QuadExt { p: self.p, a: &self.a / &n, b: -(&self.b / &n) })
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.p);
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    pub fn scale(&self, c: &Q) -> Self {
        QuadExt { p: self.p, a: &self.a * c, b: &self.b * c }
    }
}

impl Add for &QuadExt {
    type Output = QuadExt;
    fn add(self, o: &QuadExt) -> QuadExt {
        debug_assert_eq!(self.p, o.p);
        QuadExt { p: self.p, a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for &QuadExt {
    type Output = QuadExt;
    fn sub(self, o: &QuadExt) -> QuadExt {
        QuadExt { p: self.p, a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Mul for &QuadExt {
    type Output = QuadExt;
    fn mul(self, o: &QuadExt) -> QuadExt {
        debug_assert_eq!(self.p, o.p);
        let pp = q(self.p);
        QuadExt {
            p: self.p,
            a: &self.a * &o.a + pp * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { p: self.p, a: -&self.a, b: -&self.b }
    }
}

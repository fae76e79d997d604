use crate::error::RingError;
use crate::poly;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::sync::Arc;

pub const MAX_PM: u128 = 1 << 62;
pub const MAX_P: u64 = 1 << 32;
pub const MAX_R: usize = 32;

/// Parameters of `GR(p^m, r)`. `modulus` holds all `r + 1` coefficients of
/// the monic defining polynomial, lowest first. On input it may be omitted,
/// in which case the canonical modulus is filled in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingParams {
    pub p: u64,
    pub m: u32,
    pub r: usize,
    #[serde(default)]
    pub modulus: Vec<u64>,
}

impl RingParams {
    pub fn pm(&self) -> u64 {
        self.p.pow(self.m)
    }

    /// Same field, same precision, same degree.
    pub fn same_ring(&self, o: &RingParams) -> bool {
        self.p == o.p && self.m == o.m && self.r == o.r
    }

    pub fn label(&self) -> String {
        format!("GR({}^{}, {})", self.p, self.m, self.r)
    }

    /// The modulus written out, e.g. `x^2 + x + 1` or `x + 0`.
    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 && i != 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            terms.push(match (i, c) {
                (0, _) => c.to_string(),
                (_, 1) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        terms.join(" + ")
    }

    /// Fills in the canonical modulus, or checks a supplied one against it.
    pub fn normalized(&self) -> Result<RingParams, RingError> {
        let canon = make_ring(self.p, self.m, self.r)?;
        if !self.modulus.is_empty() && self.modulus != canon.modulus {
            return Err(RingError::InvalidParams(format!(
                "modulus {:?} is not the canonical modulus {:?}",
                self.modulus, canon.modulus
            )));
        }
        Ok(canon)
    }
}

/// Smallest monic irreducible polynomial of degree `r` over `F_p`, where
/// `(a_{r-1}, ..., a_0)` is compared lexicographically, lifted verbatim to
/// `Z/p^m`.
pub fn make_ring(p: u64, m: u32, r: usize) -> Result<RingParams, RingError> {
    if !poly::is_prime(p) {
        return Err(RingError::NotPrime(p));
    }
    if p >= MAX_P {
        return Err(RingError::InvalidParams(format!("p = {p} exceeds 2^32")));
    }
    if m == 0 || (p as u128).checked_pow(m).map_or(true, |x| x > MAX_PM) {
        return Err(RingError::InvalidParams(format!("p^m must satisfy 1 <= m and p^m <= 2^62 (m = {m})")));
    }
    if r == 0 || r > MAX_R {
        return Err(RingError::InvalidParams(format!("r = {r} outside 1..={MAX_R}")));
    }
    // N runs through the candidates in order; a_0 is the least significant
    // base-p digit, so numeric order is the required lexicographic order.
    let mut n: u128 = 0;
    loop {
        let mut f = Vec::with_capacity(r + 1);
        let mut t = n;
        for _ in 0..r {
            f.push((t % p as u128) as u64);
            t /= p as u128;
        }
        f.push(1);
        if poly::is_irreducible(&f, p) {
            return Ok(RingParams { p, m, r, modulus: f });
        }
        n += 1;
    }
}

/// `GR(p^m, r)` with precomputed reduction data and Frobenius.
///
/// Elements are coefficient slices of length `r`. The raw methods assume
/// well-formed input; [`GrElem`] is the checked wrapper.
#[derive(Clone, Debug)]
pub struct GaloisRing {
    params: RingParams,
    pm: u64,
    // x^r = sum red[i] x^i
    red: Vec<u64>,
    // sigma(x)^i for i < r
    sigma_pows: Vec<Vec<u64>>,
}

impl PartialEq for GaloisRing {
    fn eq(&self, o: &Self) -> bool {
        self.params == o.params
    }
}
impl Eq for GaloisRing {}

impl GaloisRing {
    pub fn new(p: u64, m: u32, r: usize) -> Result<GaloisRing, RingError> {
        Self::from_params(&make_ring(p, m, r)?)
    }

    pub fn from_params(params: &RingParams) -> Result<GaloisRing, RingError> {
        let params = params.normalized()?;
        let pm = params.pm();
        let r = params.r;
        let red = params.modulus[..r].iter().map(|&c| (pm - c % pm) % pm).collect();
        let mut ring = GaloisRing { params, pm, red, sigma_pows: vec![] };
        ring.sigma_pows = ring.compute_sigma_pows();
        Ok(ring)
    }

    fn compute_sigma_pows(&self) -> Vec<Vec<u64>> {
        let r = self.r();
        if r == 1 {
            return vec![self.one()];
        }
        let mut x = self.zero();
        x[1] = 1;
        // Newton iteration for the root of the modulus congruent to x^p.
        let mut y = self.pow(&x, self.p());
        let f = |z: &[u64]| self.eval_poly(&self.params.modulus, z);
        let deriv: Vec<u64> = (1..=r).map(|i| self.params.modulus[i] * i as u64 % self.pm).collect();
        for _ in 0..=self.m() {
            let fy = f(&y);
            if self.is_zero(&fy) {
                break;
            }
            let dy = self.inv(&self.eval_poly(&deriv, &y)).expect("modulus is separable mod p");
            y = self.sub(&y, &self.mul(&fy, &dy));
        }
        debug_assert!(self.is_zero(&f(&y)));
        let mut out = vec![self.one()];
        for _ in 1..r {
            let prev = out.last().unwrap();
            out.push(self.mul(prev, &y));
        }
        out
    }

    fn eval_poly(&self, coeffs: &[u64], z: &[u64]) -> Vec<u64> {
        let mut acc = self.zero();
        for &c in coeffs.iter().rev() {
            acc = self.mul(&acc, z);
            acc[0] = (acc[0] + c % self.pm) % self.pm;
        }
        acc
    }

    pub fn params(&self) -> &RingParams {
        &self.params
    }
    pub fn p(&self) -> u64 {
        self.params.p
    }
    pub fn m(&self) -> u32 {
        self.params.m
    }
    pub fn r(&self) -> usize {
        self.params.r
    }
    pub fn pm(&self) -> u64 {
        self.pm
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.r()]
    }

    pub fn one(&self) -> Vec<u64> {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = n.rem_euclid(self.pm as i64) as u64;
        v
    }

    /// Checks length and range of a coefficient vector.
    pub fn from_coeffs(&self, c: &[u64]) -> Result<Vec<u64>, RingError> {
        if c.len() != self.r() {
            return Err(RingError::InvalidParams(format!(
                "expected {} coefficients, got {}",
                self.r(),
                c.len()
            )));
        }
        if let Some(&bad) = c.iter().find(|&&x| x >= self.pm) {
            return Err(RingError::InvalidParams(format!("coefficient {bad} not in [0, {})", self.pm)));
        }
        Ok(c.to_vec())
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| ((x as u128 + y as u128) % self.pm as u128) as u64).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| ((x as u128 + self.pm as u128 - y as u128) % self.pm as u128) as u64).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| (self.pm - x) % self.pm).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let r = self.r();
        let pm = self.pm as u128;
        let mut prod = vec![0u128; 2 * r - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128 % pm) % pm;
            }
        }
        for k in (r..2 * r - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (i, &ri) in self.red.iter().enumerate() {
                prod[k - r + i] = (prod[k - r + i] + c * ri as u128 % pm) % pm;
            }
        }
        prod[..r].iter().map(|&c| c as u64).collect()
    }

    pub fn scale(&self, a: &[u64], n: u64) -> Vec<u64> {
        let pm = self.pm as u128;
        a.iter().map(|&x| (x as u128 * (n as u128 % pm) % pm) as u64).collect()
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.one();
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// A unit is an element with nonzero image in `F_{p^r}`.
    pub fn is_unit(&self, a: &[u64]) -> bool {
        a.iter().any(|&c| c % self.p() != 0)
    }

    pub fn inv(&self, a: &[u64]) -> Result<Vec<u64>, RingError> {
        let p = self.p();
        let mut abar: Vec<u64> = a.iter().map(|&c| c % p).collect();
        poly::trim(&mut abar);
        if abar.is_empty() {
            return Err(RingError::NonUnit);
        }
        let fbar: Vec<u64> = self.params.modulus.iter().map(|&c| c % p).collect();
        let mut b = poly::inverse_mod(&abar, &fbar, p).ok_or(RingError::NonUnit)?;
        b.resize(self.r(), 0);
        let two = self.from_int(2);
        let mut prec = 1u32;
        while prec < self.m() {
            b = self.mul(&b, &self.sub(&two, &self.mul(a, &b)));
            prec *= 2;
        }
        debug_assert_eq!(self.mul(a, &b), self.one());
        Ok(b)
    }

    pub fn frobenius(&self, a: &[u64]) -> Vec<u64> {
        let mut acc = self.zero();
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                acc = self.add(&acc, &self.scale(&self.sigma_pows[i], c));
            }
        }
        acc
    }

    pub fn frobenius_pow(&self, a: &[u64], k: usize) -> Vec<u64> {
        let mut x = a.to_vec();
        for _ in 0..k % self.r() {
            x = self.frobenius(&x);
        }
        x
    }

    /// `min v_p` over the coefficients; `m` for zero.
    pub fn valuation(&self, a: &[u64]) -> u32 {
        a.iter().map(|&c| vp(c, self.p()).min(self.m())).min().unwrap_or(self.m())
    }

    /// Exact division by `p^v`; requires `valuation(a) >= v`. The result is
    /// only meaningful mod `p^{m-v}`; its top digits are zero.
    pub fn div_p_pow(&self, a: &[u64], v: u32) -> Vec<u64> {
        let d = self.p().pow(v);
        a.iter()
            .map(|&c| {
                debug_assert_eq!(c % d, 0);
                c / d
            })
            .collect()
    }

    pub fn mul_p_pow(&self, a: &[u64], v: u32) -> Vec<u64> {
        if v >= self.m() {
            return self.zero();
        }
        self.scale(a, self.p().pow(v))
    }

    /// Coefficients reduced mod `p^m2` for `m2 <= m`.
    pub fn truncate(&self, a: &[u64], m2: u32) -> Vec<u64> {
        let d = self.p().pow(m2.min(self.m()));
        a.iter().map(|&c| c % d).collect()
    }

    /// Whether `a` lies in `Z/p^m` (the fixed ring of sigma).
    pub fn is_base(&self, a: &[u64]) -> bool {
        a[1..].iter().all(|&c| c == 0)
    }
}

pub(crate) fn vp(mut c: u64, p: u64) -> u32 {
    if c == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    while c % p == 0 {
        c /= p;
        v += 1;
    }
    v
}

/// A checked element of `GR(p^m, r)`. JSON form:
/// `{"p":2,"m":2,"r":2,"coeffs":[a0,a1]}`.
#[derive(Clone)]
pub struct GrElem {
    ring: Arc<GaloisRing>,
    coeffs: Vec<u64>,
}

impl GrElem {
    pub fn new(ring: Arc<GaloisRing>, coeffs: &[u64]) -> Result<GrElem, RingError> {
        let coeffs = ring.from_coeffs(coeffs)?;
        Ok(GrElem { ring, coeffs })
    }

    pub fn from_int(ring: Arc<GaloisRing>, n: i64) -> GrElem {
        let coeffs = ring.from_int(n);
        GrElem { ring, coeffs }
    }

    /// The generator `x` (or the integer 0 when `r = 1`, where `x` reduces
    /// to minus the constant of the modulus).
    pub fn generator(ring: Arc<GaloisRing>) -> GrElem {
        let coeffs = if ring.r() == 1 {
            ring.from_int(-(ring.params().modulus[0] as i64))
        } else {
            let mut v = ring.zero();
            v[1] = 1;
            v
        };
        GrElem { ring, coeffs }
    }

    pub fn ring(&self) -> &Arc<GaloisRing> {
        &self.ring
    }

    pub fn params(&self) -> &RingParams {
        self.ring.params()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    fn check(&self, o: &GrElem) -> Result<(), RingError> {
        if !self.params().same_ring(o.params()) {
            return Err(RingError::Mismatch(self.params().label(), o.params().label()));
        }
        Ok(())
    }

    fn with(&self, coeffs: Vec<u64>) -> GrElem {
        GrElem { ring: self.ring.clone(), coeffs }
    }

    pub fn add(&self, o: &GrElem) -> Result<GrElem, RingError> {
        self.check(o)?;
        Ok(self.with(self.ring.add(&self.coeffs, &o.coeffs)))
    }

    pub fn sub(&self, o: &GrElem) -> Result<GrElem, RingError> {
        self.check(o)?;
        Ok(self.with(self.ring.sub(&self.coeffs, &o.coeffs)))
    }

    pub fn mul(&self, o: &GrElem) -> Result<GrElem, RingError> {
        self.check(o)?;
        Ok(self.with(self.ring.mul(&self.coeffs, &o.coeffs)))
    }

    pub fn neg(&self) -> GrElem {
        self.with(self.ring.neg(&self.coeffs))
    }

    pub fn inv(&self) -> Result<GrElem, RingError> {
        Ok(self.with(self.ring.inv(&self.coeffs)?))
    }

    pub fn frobenius(&self) -> GrElem {
        self.with(self.ring.frobenius(&self.coeffs))
    }

    pub fn pow(&self, e: u64) -> GrElem {
        self.with(self.ring.pow(&self.coeffs, e))
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.coeffs)
    }

    pub fn valuation(&self) -> u32 {
        self.ring.valuation(&self.coeffs)
    }
}

impl PartialEq for GrElem {
    fn eq(&self, o: &Self) -> bool {
        self.params().same_ring(o.params()) && self.coeffs == o.coeffs
    }
}
impl Eq for GrElem {}

impl fmt::Debug for GrElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.params().label(), self.coeffs)
    }
}

#[derive(Serialize, Deserialize)]
struct GrElemJson {
    p: u64,
    m: u32,
    r: usize,
    coeffs: Vec<u64>,
}

impl Serialize for GrElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pr = self.params();
        GrElemJson { p: pr.p, m: pr.m, r: pr.r, coeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GrElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<GrElem, D::Error> {
        let j = GrElemJson::deserialize(d)?;
        let ring = GaloisRing::new(j.p, j.m, j.r).map_err(serde::de::Error::custom)?;
        GrElem::new(Arc::new(ring), &j.coeffs).map_err(serde::de::Error::custom)
    }
}

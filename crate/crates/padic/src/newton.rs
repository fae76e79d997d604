use crate::error::PadicError;
use crate::matrix::{El, PadicMatrix};
use lk_exact::rational::serde_q;
use lk_exact::{q, Q};
use lk_ring::GaloisRing;
use num_traits::Zero;
use serde::Serialize;

/// Coefficients of `det(T − A)`, lowest degree first, by Berkowitz's
/// division-free recursion.
pub fn charpoly(a: &PadicMatrix) -> Vec<El> {
    let r = &**a.ring();
    let n = a.n();
    let at = |i: usize, j: usize| a.entry(i, j);
    // `v` holds the polynomial of the leading r × r block, highest first.
    let mut v: Vec<El> = vec![r.one()];
    for k in 0..n {
        // column of the Toeplitz matrix: 1, −a_kk, −R C, −R M C, …
        let mut col: Vec<El> = vec![r.one(), r.neg(at(k, k))];
        let mut mc: Vec<El> = (0..k).map(|i| at(i, k).clone()).collect();
        for _ in 0..k {
            let rc = (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(at(k, j), &mc[j])));
            col.push(r.neg(&rc));
            mc = (0..k).map(|i| (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(at(i, j), &mc[j])))).collect();
        }
        let mut next = vec![r.zero(); k + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, x) in v.iter().enumerate() {
                if i >= j {
                    *slot = r.add(slot, &r.mul(&col[i - j], x));
                }
            }
        }
        v = next;
    }
    v.reverse();
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    #[serde(with = "serde_q")]
    pub slope: Q,
    pub multiplicity: usize,
}

/// Slopes (root valuations) with multiplicities, slopes increasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    pub fn degree(&self) -> usize {
        self.segments.iter().map(|s| s.multiplicity).sum()
    }

    pub fn multiplicity(&self, slope: &Q) -> usize {
        self.segments.iter().filter(|s| &s.slope == slope).map(|s| s.multiplicity).sum()
    }

    /// `Σ slope · multiplicity`, the valuation of the constant term.
    pub fn weighted_sum(&self) -> Q {
        self.segments.iter().fold(Q::zero(), |acc, s| acc + &s.slope * q(s.multiplicity as i64))
    }
}

/// Newton polygon of a monic polynomial over `GR(p^N, r)` given lowest
/// first. Coefficients that vanish mod `p^N` may still carry any valuation
/// `≥ N`; that is an error exactly when such a point could lie below the
/// hull of the known points.
pub fn newton_polygon(r: &GaloisRing, coeffs: &[El]) -> Result<NewtonPolygon, PadicError> {
    let d = coeffs.len().checked_sub(1).ok_or_else(|| PadicError::Invalid("empty polynomial".into()))?;
    if coeffs[d] != r.one() {
        return Err(PadicError::Invalid("polynomial is not monic".into()));
    }
    let prec = r.m();
    let vals: Vec<Option<u32>> = coeffs.iter().map(|c| Some(r.valuation(c)).filter(|&v| v < prec)).collect();
    if vals[0].is_none() {
        return Err(PadicError::Precision(format!("constant term vanishes mod p^{prec}")));
    }
    let pts: Vec<(i64, i64)> =
        vals.iter().enumerate().filter_map(|(i, v)| v.map(|v| (i as i64, v as i64))).collect();
    // lower hull from (0, v_0) to (d, 0)
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b if it lies on or above the segment a–pt
            if (b.1 - a.1) * (pt.0 - a.0) >= (pt.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    for (i, v) in vals.iter().enumerate() {
        if v.is_some() {
            continue;
        }
        let i = i as i64;
        let w = hull.windows(2).find(|w| w[0].0 < i && i < w[1].0).expect("interior point");
        // hull height at i is above N?  (y_a (x_b − i) + y_b (i − x_a)) / (x_b − x_a) > N
        let (a, b) = (w[0], w[1]);
        if a.1 * (b.0 - i) + b.1 * (i - a.0) > prec as i64 * (b.0 - a.0) {
            return Err(PadicError::Precision(format!("coefficient of T^{i} is 0 mod p^{prec} but could lie below the hull")));
        }
    }
    let mut segments: Vec<Segment> = Vec::new();
    for w in hull.windows(2).rev() {
        let slope = Q::new((w[0].1 - w[1].1).into(), (w[1].0 - w[0].0).into());
        let mult = (w[1].0 - w[0].0) as usize;
        match segments.last_mut() {
            Some(s) if s.slope == slope => s.multiplicity += mult,
            _ => segments.push(Segment { slope, multiplicity: mult }),
        }
    }
    Ok(NewtonPolygon { segments })
}

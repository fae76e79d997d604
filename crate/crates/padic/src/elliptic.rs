use crate::error::PadicError;
use crate::matrix::{El, PadicMatrix};
use crate::newton::{charpoly, newton_polygon, NewtonPolygon};
use lk_ring::GaloisRing;
use num_integer::Integer;
use serde::Serialize;

const MAX_CANDIDATES: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EllipticMethod {
    Degree1,
    SingleSlope,
    SeveralSlopes,
    RootFound,
    NoRoot,
}

#[derive(Clone, Debug, Serialize)]
pub struct EllipticReport {
    pub elliptic: bool,
    pub polygon: NewtonPolygon,
    pub method: EllipticMethod,
    /// A residue mod `p^N` that Hensel-lifts to a root in `Z_p`.
    pub root: Option<u64>,
}

fn eval(r: &GaloisRing, f: &[El], x: &El) -> El {
    f.iter().rev().fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c))
}

fn derivative(r: &GaloisRing, f: &[El]) -> Vec<El> {
    f.iter().enumerate().skip(1).map(|(i, c)| r.scale(c, i as u64)).collect()
}

/// Whether a monic polynomial over `Z_p` (coefficients lowest first, all in
/// `Z/p^N`) has a root in `Z_p`. A residue `x` with `v(f(x)) > 2 v(f′(x))`
/// lifts to a root; residues mod `p^j` with `f(x) ≢ 0 mod p^j` cannot be
/// approximations of one.
pub fn has_root(r: &GaloisRing, f: &[El]) -> Result<Option<u64>, PadicError> {
    if f.iter().any(|c| !r.is_base(c)) {
        return Err(PadicError::Invalid("coefficients must lie in Z_p".into()));
    }
    let p = r.p();
    let prec = r.m();
    let df = derivative(r, f);
    let mut level: Vec<u64> = vec![0];
    let mut modulus: u64 = 1;
    for j in 1..=prec {
        let mut next = Vec::new();
        for &x in &level {
            for t in 0..p {
                let y = x + t * modulus;
                let fy = eval(r, f, &r.from_int(y as i64));
                let vf = r.valuation(&fy);
                if vf < j {
                    continue;
                }
                let vd = r.valuation(&eval(r, &df, &r.from_int(y as i64)));
                if vd < prec && vf > 2 * vd {
                    return Ok(Some(y));
                }
                next.push(y);
            }
        }
        if next.is_empty() {
            return Ok(None);
        }
        if next.len() > MAX_CANDIDATES {
            return Err(PadicError::Precision("too many approximate roots".into()));
        }
        level = next;
        modulus *= p;
    }
    Err(PadicError::Precision(format!("root search undecided at precision {prec}")))
}

/// Irreducibility of the characteristic polynomial of `γ` over `Q_p`,
/// certified for `n ≤ 3`.
pub fn is_elliptic(g: &PadicMatrix) -> Result<EllipticReport, PadicError> {
    let n = g.n();
    if n == 0 || n > 3 {
        return Err(PadicError::Unsupported(format!("ellipticity is certified for 1 ≤ n ≤ 3, got {n}")));
    }
    let r = &**g.ring();
    if g.entries().iter().any(|e| !r.is_base(e)) {
        return Err(PadicError::Invalid("γ must have entries in Q_p".into()));
    }
    let f = charpoly(g);
    let polygon = newton_polygon(r, &f)?;
    let report = |elliptic, method, root| Ok(EllipticReport { elliptic, polygon: polygon.clone(), method, root });
    if n == 1 {
        return report(true, EllipticMethod::Degree1, None);
    }
    if polygon.segments.len() > 1 {
        return report(false, EllipticMethod::SeveralSlopes, None);
    }
    let slope = &polygon.segments[0].slope;
    if slope.denom().gcd(&(n as i64).into()) == (n as i64).into() {
        return report(true, EllipticMethod::SingleSlope, None);
    }
    // degree ≤ 3: reducible exactly when there is a root
    match has_root(r, &f)? {
        Some(x) => report(false, EllipticMethod::RootFound, Some(x)),
        None => report(true, EllipticMethod::NoRoot, None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64, rows: &[Vec<i64>]) -> PadicMatrix {
        PadicMatrix::from_int_rows(p, 1, 8, rows).unwrap()
    }

    #[test]
    fn documented_cases() {
        assert!(!is_elliptic(&m(3, &[vec![1, 0], vec![0, 3]])).unwrap().elliptic);
        let e = is_elliptic(&m(3, &[vec![0, 3], vec![1, 0]])).unwrap();
        assert!(e.elliptic);
        assert_eq!(e.method, EllipticMethod::SingleSlope);
        // T^2 − 2 over Q_3: 2 is not a square mod 3
        let e = is_elliptic(&m(3, &[vec![0, 2], vec![1, 0]])).unwrap();
        assert_eq!((e.elliptic, e.method), (true, EllipticMethod::NoRoot));
        // T^2 − 7 over Q_3: 7 ≡ 1 is a square
        let e = is_elliptic(&m(3, &[vec![0, 7], vec![1, 0]])).unwrap();
        assert_eq!((e.elliptic, e.method), (false, EllipticMethod::RootFound));
        // repeated root: undecidable
        assert!(is_elliptic(&m(3, &[vec![1, 0], vec![0, 1]])).is_err());
        assert!(is_elliptic(&PadicMatrix::from_int_rows(3, 1, 8, &vec![vec![1; 4]; 4]).unwrap()).is_err());
    }
}

//! Height of `δ₀` and its splitting into a connected block and an étale
//! block, for `F = δ₀σ` acting on column vectors of `Z_{p^r}^n`.

use crate::error::PadicError;
use crate::matrix::{identity, inv, mul, mul_rect, sigma, El, PadicMatrix};
use crate::newton::{charpoly, newton_polygon, NewtonPolygon};
use crate::snf::diagonal_valuations;
use lk_exact::q;
use lk_ring::GaloisRing;

/// Newton polygon of `det(T − Nδ)` with the denominator accounted for.
pub fn norm_polygon(d: &PadicMatrix) -> Result<NewtonPolygon, PadicError> {
    let nd = d.norm()?;
    let mut np = newton_polygon(nd.ring(), &charpoly(&nd))?;
    let shift = q(nd.denom() as i64);
    for s in &mut np.segments {
        s.slope -= &shift;
    }
    Ok(np)
}

/// `n` minus the multiplicity of slope 0 in the Newton polygon of `Nδ₀`.
pub fn height_of_delta(d: &PadicMatrix) -> Result<usize, PadicError> {
    Ok(d.n() - norm_polygon(d)?.multiplicity(&q(0)))
}

/// Column reduction with unit pivots. Returns the reduced columns (an
/// `n × c` matrix, row-major) and the pivot rows; the reduced block is the
/// identity on the pivot rows. Columns with no unit entry left must vanish.
fn unit_column_basis(r: &GaloisRing, a: &[El], n: usize) -> Result<(Vec<El>, Vec<usize>), PadicError> {
    let mut m = a.to_vec();
    let mut piv: Vec<usize> = Vec::new();
    let mut c = 0;
    while c < n {
        let found = (c..n).find_map(|j| (0..n).find(|i| !piv.contains(i) && r.is_unit(&m[i * n + j])).map(|i| (i, j)));
        let Some((i, j)) = found else { break };
        for row in 0..n {
            m.swap(row * n + c, row * n + j);
        }
        let u = r.inv(&m[i * n + c])?;
        for row in 0..n {
            m[row * n + c] = r.mul(&m[row * n + c], &u);
        }
        for j in 0..n {
            if j == c || r.is_zero(&m[i * n + j]) {
                continue;
            }
            let f = m[i * n + j].clone();
            for row in 0..n {
                let s = r.mul(&f, &m[row * n + c]);
                m[row * n + j] = r.sub(&m[row * n + j], &s);
            }
        }
        piv.push(i);
        c += 1;
    }
    if (0..n).any(|i| (c..n).any(|j| !r.is_zero(&m[i * n + j]))) {
        return Err(PadicError::Precision("image is not a direct summand at this precision".into()));
    }
    let cols = piv.len();
    let basis = (0..n).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| m[i * n + j].clone()).collect();
    Ok((basis, piv))
}

fn rows_of(a: &[El], cols: usize, rows: &[usize]) -> Vec<El> {
    rows.iter().flat_map(|&i| a[i * cols..(i + 1) * cols].iter().cloned()).collect()
}

/// `log_p` of the size of the column span of `a` mod `p^N`.
fn image_size(r: &GaloisRing, a: &[El], n: usize) -> u64 {
    diagonal_valuations(r, a, n, n).into_iter().map(|v| v.map_or(0, |v| (r.m() - v) as u64)).sum()
}

#[derive(Clone, Debug)]
pub struct EtaleSplit {
    pub k: usize,
    /// Matrix of `F` on the stable submodule: `F(B x) = B δ₂′ σ(x)`.
    pub delta2: PadicMatrix,
    /// Matrix of `F` on the connected complement.
    pub connected: PadicMatrix,
    /// `n × (n−k)` basis of the stable submodule, row-major.
    pub basis: Vec<El>,
    /// `n × k` basis of the complement on which `F` is topologically nilpotent.
    pub complement: Vec<El>,
    /// `Q = [complement | basis]`, with `Q^{-1} δ₀ Q^σ = diag(δ₁, δ₂′)`.
    pub conjugator: PadicMatrix,
    /// Iterations until the images `F^s(Λ)` stopped shrinking.
    pub steps: usize,
}

impl EtaleSplit {
    /// `diag(δ₁, δ₂′)`.
    pub fn block_form(&self) -> PadicMatrix {
        let n = self.conjugator.n();
        let r = self.conjugator.ring();
        let k = self.k;
        let mut e = vec![r.zero(); n * n];
        for i in 0..k {
            for j in 0..k {
                e[i * n + j] = self.connected.entry(i, j).clone();
            }
        }
        for i in 0..n - k {
            for j in 0..n - k {
                e[(k + i) * n + k + j] = self.delta2.entry(i, j).clone();
            }
        }
        self.conjugator.with_entries(e)
    }
}

/// Splits an integral `δ₀` through the stable image `U = ∩ F^s(Λ)` and the
/// complement `C = {v : F^s v → 0}`.
pub fn etale_split(d: &PadicMatrix) -> Result<EtaleSplit, PadicError> {
    if !d.is_integral() {
        return Err(PadicError::Invalid("étale splitting needs an integral matrix".into()));
    }
    let n = d.n();
    d.require_precision(2, "etale_split")?;
    let ring = d.ring().clone();
    let r = &*ring;
    let prec = r.m() as usize;

    let mut cur = identity(r, n);
    let mut size = image_size(r, &cur, n);
    let mut steps = 0;
    let limit = n * prec + 2;
    loop {
        let next = mul(r, n, d.entries(), &sigma(r, &cur));
        let s = image_size(r, &next, n);
        steps += 1;
        if s == size {
            break;
        }
        if steps > limit {
            return Err(PadicError::NonStabilizing(format!("images still shrinking after {limit} steps")));
        }
        cur = next;
        size = s;
    }
    let (basis, piv) = unit_column_basis(r, &cur, n)?;
    let e = piv.len();
    let k = n - e;
    let fb = mul_rect(r, d.entries(), &sigma(r, &basis), n, n, e);
    let x = rows_of(&fb, e, &piv);
    if mul_rect(r, &basis, &x, n, e, e) != fb {
        return Err(PadicError::Precision("stable image is not F-stable at this precision".into()));
    }
    inv(r, e, &x).map_err(|_| PadicError::Precision("F is not bijective on the stable image".into()))?;
    let delta2 = PadicMatrix::new(ring.clone(), e, 0, x.clone())?;

    // projector onto U along C: B Φ_U^{-S} (Φ^S)[piv, :]
    let phi = d.norm()?;
    let phi_u = delta2.norm()?;
    let s_pow = n * prec;
    let mut phi_s = identity(r, n);
    let mut phi_u_s = identity(r, e);
    for _ in 0..s_pow {
        phi_s = mul(r, n, &phi_s, phi.entries());
        phi_u_s = mul(r, e, &phi_u_s, phi_u.entries());
    }
    let coords = mul_rect(r, &inv(r, e, &phi_u_s)?, &rows_of(&phi_s, n, &piv), e, e, n);
    let proj = mul_rect(r, &basis, &coords, n, e, n);
    let id = identity(r, n);
    let comp_full: Vec<El> = id.iter().zip(&proj).map(|(a, b)| r.sub(a, b)).collect();
    let (complement, _) = unit_column_basis(r, &comp_full, n)?;
    if complement.len() != n * k {
        return Err(PadicError::Precision("complement has the wrong rank at this precision".into()));
    }

    let mut q_entries = vec![r.zero(); n * n];
    for i in 0..n {
        for j in 0..k {
            q_entries[i * n + j] = complement[i * k + j].clone();
        }
        for j in 0..e {
            q_entries[i * n + k + j] = basis[i * e + j].clone();
        }
    }
    let conjugator = PadicMatrix::new(ring.clone(), n, 0, q_entries)?;
    let block = d.sigma_conjugate(&conjugator)?;
    let mut conn = Vec::with_capacity(k * k);
    for i in 0..n {
        for j in 0..n {
            let a = block.entry(i, j);
            match (i < k, j < k) {
                (true, true) => conn.push(a.clone()),
                (false, false) => {
                    if a != &x[(i - k) * e + j - k] {
                        return Err(PadicError::Precision("étale block does not match after conjugation".into()));
                    }
                }
                _ => {
                    if !r.is_zero(a) {
                        return Err(PadicError::Precision("block form has nonzero off-diagonal entries".into()));
                    }
                }
            }
        }
    }
    let connected = PadicMatrix::new(ring.clone(), k, 0, conn)?;
    if k > 0 && norm_polygon(&connected)?.multiplicity(&q(0)) != 0 {
        return Err(PadicError::Precision("connected block has a unit-root slope".into()));
    }
    Ok(EtaleSplit { k, delta2, connected, basis, complement, conjugator, steps })
}

//! `O_γ(f) = Σ_{x ∈ G/ZK} f(x^{-1} γ x)` and
//! `TO_{δσ}(φ) = Σ_{x ∈ G(Q_{p^r})/ZK} φ(x^{-1} δ x^σ)`, with `K` of measure
//! one, summed over homothety classes of lattices `L = xΛ₀` within
//! distance `D` of `Λ₀`.
//!
//! A value is only claimed when the sums at depths `D` and `D + 1` agree.

use crate::error::OrbitalError;
use crate::lattice::{homothety_ball, scaled_inverse, work_ring, El, Primitive};
use crate::support::{Evaluator, SupportSpec};
use lk_exact::rational::{serde_q, serde_q_opt};
use lk_exact::Q;
use lk_padic::{charpoly, is_elliptic, smith_normal_form, PadicMatrix};
use lk_ring::GaloisRing;
use num_traits::Zero;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Plain,
    Twisted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthSum {
    pub depth: u32,
    #[serde(with = "serde_q")]
    pub sum: Q,
    /// Homothety classes within this depth.
    pub classes: usize,
    /// Classes contributing a nonzero value.
    pub contributing: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitalReport {
    pub mode: Mode,
    #[serde(with = "serde_q_opt")]
    pub value: Option<Q>,
    pub stable: bool,
    /// The `D` whose sum is reported; `D + 1` gave the same sum.
    pub certified_depth: u32,
    pub sums: Vec<DepthSum>,
    /// `γ` (or `Nδ` for twisted mode) is central; the value is `f(γ)`.
    pub central: bool,
    /// Irreducibility of the characteristic polynomial over `Q_p`, when
    /// it is certified (`n ≤ 3`).
    pub elliptic: Option<bool>,
}

impl OrbitalReport {
    pub fn status(&self) -> &'static str {
        if self.stable {
            "stable"
        } else {
            "unstable"
        }
    }
}

fn mul(r: &GaloisRing, n: usize, a: &[El], b: &[El]) -> Vec<El> {
    let mut out = vec![r.zero(); n * n];
    for i in 0..n {
        for l in 0..n {
            let x = &a[i * n + l];
            if r.is_zero(x) {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = r.add(&out[i * n + j], &r.mul(x, &b[l * n + j]));
            }
        }
    }
    out
}

fn is_central(m: &PadicMatrix) -> bool {
    let n = m.n();
    (0..n).all(|i| (0..n).all(|j| if i == j { m.entry(i, i) == m.entry(0, 0) } else { m.ring().is_zero(m.entry(i, j)) }))
}

/// `x^{-1} g x^σ` (or `x^{-1} g x`) for the lattice `x Λ₀`, at the
/// precision that survives the inversion.
struct Conjugator<'a> {
    g: &'a PadicMatrix,
    twisted: bool,
    rings: HashMap<u32, Arc<GaloisRing>>,
}

impl<'a> Conjugator<'a> {
    fn apply(&mut self, l: &Primitive) -> Result<PadicMatrix, OrbitalError> {
        let ring = self.g.ring();
        let n = self.g.n();
        let a: Vec<El> = l.a.iter().map(|x| ring.truncate(x, ring.m())).collect();
        let b = scaled_inverse(ring, n, &l.exps, &a, l.depth).expect("depth bounds the inverse");
        let a_tw: Vec<El> = if self.twisted { a.iter().map(|x| ring.frobenius(x)).collect() } else { a };
        let y = mul(ring, n, &mul(ring, n, &b, self.g.entries()), &a_tw);
        let loss: u32 = l.exps.iter().sum();
        let keep = ring.m().saturating_sub(loss);
        let denom = l.depth + self.g.denom();
        if keep <= denom {
            return Err(lk_padic::PadicError::Precision(format!(
                "precision {} leaves {keep} digits after inverting a lattice basis, need more than {denom}",
                ring.m()
            ))
            .into());
        }
        let target = match self.rings.get(&keep) {
            Some(t) => t.clone(),
            None => {
                let t = Arc::new(GaloisRing::new(ring.p(), keep, ring.r())?);
                self.rings.insert(keep, t.clone());
                t
            }
        };
        let y = y.iter().map(|x| target.truncate(x, keep)).collect();
        Ok(PadicMatrix::new(target, n, denom, y)?)
    }
}

/// Sums `Σ f(x^{-1} g x^{(σ)})` over the homothety classes within each depth
/// `0, …, max_depth`.
pub fn depth_sums(f: &SupportSpec, g: &PadicMatrix, mode: Mode, max_depth: u32) -> Result<Vec<DepthSum>, OrbitalError> {
    let n = g.n();
    let twisted = mode == Mode::Twisted;
    let eval = Evaluator::new(f, n, g.p(), g.r(), twisted)?;
    // lattice enumeration needs room for 2 Σ e_i digits
    let enum_ring = work_ring(g.p(), g.r(), 2 * n as u32 * max_depth + 2, "lattice enumeration")?;
    let ball = homothety_ball(&enum_ring, n, max_depth)?;
    let mut conj = Conjugator { g, twisted, rings: HashMap::new() };
    let mut per_depth: Vec<(Q, usize, usize)> = vec![(Q::zero(), 0, 0); max_depth as usize + 1];
    for l in &ball {
        let y = conj.apply(l)?;
        let e = smith_normal_form(&y)?;
        let v = eval.eval(&e, &y)?;
        let slot = &mut per_depth[l.depth as usize];
        slot.1 += 1;
        if !v.is_zero() {
            slot.2 += 1;
            slot.0 += v;
        }
    }
    let mut out = Vec::new();
    let (mut s, mut c, mut k) = (Q::zero(), 0, 0);
    for (d, (v, classes, contributing)) in per_depth.into_iter().enumerate() {
        s += v;
        c += classes;
        k += contributing;
        out.push(DepthSum { depth: d as u32, sum: s.clone(), classes: c, contributing: k });
    }
    Ok(out)
}

fn companion_elliptic(g: &PadicMatrix) -> Option<bool> {
    let n = g.n();
    if n == 0 || n > 3 {
        return None;
    }
    let ring = g.ring();
    let cp = charpoly(g);
    if cp.iter().any(|c| !ring.is_base(c)) {
        return None;
    }
    let base = Arc::new(GaloisRing::new(ring.p(), ring.m(), 1).ok()?);
    let mut e = vec![base.zero(); n * n];
    for i in 1..n {
        e[i * n + i - 1] = base.one();
    }
    for i in 0..n {
        e[i * n + n - 1] = vec![ring.neg(&cp[i])[0]];
    }
    let comp = PadicMatrix::new(base, n, 0, e).ok()?;
    is_elliptic(&comp).ok().map(|r| r.elliptic)
}

fn integral(f: &SupportSpec, g: &PadicMatrix, mode: Mode, depth: u32) -> Result<OrbitalReport, OrbitalError> {
    let (central, elliptic) = match mode {
        Mode::Plain => (is_central(g), companion_elliptic(g)),
        Mode::Twisted => {
            let nd = g.norm()?;
            (is_central(&nd), companion_elliptic(&nd))
        }
    };
    if central && mode == Mode::Plain {
        let eval = Evaluator::new(f, g.n(), g.p(), g.r(), false)?;
        let value = eval.eval(&smith_normal_form(g)?, g)?;
        return Ok(OrbitalReport {
            mode,
            value: Some(value),
            stable: true,
            certified_depth: 0,
            sums: vec![],
            central,
            elliptic,
        });
    }
    let sums = depth_sums(f, g, mode, depth + 1)?;
    let stable = sums[depth as usize].sum == sums[depth as usize + 1].sum;
    let value = stable.then(|| sums[depth as usize].sum.clone());
    Ok(OrbitalReport { mode, value, stable, certified_depth: depth, sums, central, elliptic })
}

/// `O_γ(f)` for `γ ∈ GL_n(Q_p)`, certified by agreement at depths `D` and
/// `D + 1`. Central `γ` short-circuits to `f(γ)`.
pub fn orbital_integral(f: &SupportSpec, gamma: &PadicMatrix, depth: u32) -> Result<OrbitalReport, OrbitalError> {
    if gamma.r() != 1 {
        return Err(OrbitalError::Invalid("γ must be given over Q_p (r = 1)".into()));
    }
    integral(f, gamma, Mode::Plain, depth)
}

/// `TO_{δσ}(φ)` for `δ ∈ GL_n(Q_{p^r})`.
pub fn twisted_orbital_integral(phi: &SupportSpec, delta: &PadicMatrix, depth: u32) -> Result<OrbitalReport, OrbitalError> {
    integral(phi, delta, Mode::Twisted, depth)
}

/// Number of cosets `xK ⊆ K diag(p, 1, …, 1) K` in `GL_n(Q_{p^r})`, by
/// enumerating the lattices `xΛ₀` between `pΛ₀` and `Λ₀` and reading off
/// their elementary divisors.
pub fn double_coset_volume(n: usize, p: u64, r: usize) -> Result<u64, OrbitalError> {
    if n == 0 {
        return Err(OrbitalError::Invalid("n must be positive".into()));
    }
    let mut target = vec![0i64; n];
    target[n - 1] = 1;
    let ring = work_ring(p, r, 2 * n as u32 + 2, "lattice enumeration")?;
    let mut found = Vec::new();
    crate::lattice::for_each_hnf(&ring, n, 1, |exps, a| {
        if scaled_inverse(&ring, n, exps, a, 1).is_some() {
            found.push(a.to_vec());
        }
    })?;
    let mut count = 0;
    for a in found {
        let m = PadicMatrix::new(ring.clone(), n, 0, a)?;
        if smith_normal_form(&m)? == target {
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Clone, Debug, Serialize)]
pub struct MatchRow {
    pub gamma: lk_padic::PadicInput,
    pub delta: lk_padic::PadicInput,
    pub orbital: OrbitalReport,
    pub twisted: OrbitalReport,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatchReport {
    pub rows: Vec<MatchRow>,
    pub all_equal: bool,
}

/// Coefficients of `det(T − p^{-d} M)` scaled by `p^{d n}` and compared
/// at the common precision.
fn charpolys_agree(a: &PadicMatrix, b: &PadicMatrix) -> Result<bool, OrbitalError> {
    let n = a.n();
    if n != b.n() {
        return Ok(false);
    }
    let (ca, cb) = (charpoly(a), charpoly(b));
    let (ra, rb) = (a.ring(), b.ring());
    let d = a.denom().max(b.denom());
    let keep = ra.m().min(rb.m());
    for i in 0..=n {
        // p^{d(n−i)} · p^{-d_x (n−i)} c_i = p^{(d − d_x)(n−i)} c_i
        let sa = ra.mul_p_pow(&ca[i], (d - a.denom()) * (n - i) as u32);
        let sb = rb.mul_p_pow(&cb[i], (d - b.denom()) * (n - i) as u32);
        let drop = d * (n - i) as u32;
        if keep <= drop {
            return Err(lk_padic::PadicError::Precision("characteristic polynomials not determined".into()).into());
        }
        let (ta, tb) = (ra.truncate(&sa, keep), rb.truncate(&sb, keep));
        if ta[0] != tb[0] || ta[1..].iter().chain(&tb[1..]).any(|&c| c != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rows `(O_γ(f), TO_{δσ}(φ))` for pairs with `γ` conjugate to `Nδ`,
/// checked through their characteristic polynomials.
pub fn match_report(
    f: &SupportSpec,
    phi: &SupportSpec,
    pairs: &[(PadicMatrix, PadicMatrix)],
    depth: u32,
) -> Result<MatchReport, OrbitalError> {
    let mut rows = Vec::new();
    for (gamma, delta) in pairs {
        let nd = delta.norm()?;
        if !charpolys_agree(gamma, &nd)? {
            return Err(OrbitalError::Mismatch("γ and Nδ have different characteristic polynomials".into()));
        }
        let orbital = orbital_integral(f, gamma, depth)?;
        let twisted = twisted_orbital_integral(phi, delta, depth)?;
        let equal = orbital.stable && twisted.stable && orbital.value == twisted.value;
        rows.push(MatchRow { gamma: gamma.to_input(), delta: delta.to_input(), orbital, twisted, equal });
    }
    let all_equal = rows.iter().all(|r| r.equal);
    Ok(MatchReport { rows, all_equal })
}

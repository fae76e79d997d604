use crate::error::TestFnError;
use lk_characters::{FiniteLinearGroup, HeckeFunction, Level};
use lk_group::{class_norm_map, class_tables, general_linear, ClassTable, NormMap, QuotientGroup};
use lk_ring::fmat::{self, Mat};
use lk_strata::EquivariantStrata;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Conjugacy data of `GL_j(GR(p^m, r))` used to normalize `Nδ₂`.
pub(crate) struct NormData {
    pub group: QuotientGroup,
    pub conj: ClassTable,
    pub sig: ClassTable,
    pub map: NormMap,
}

/// Everything attached to a fixed `(n, p, m)`: characters up to rank `n`,
/// the equivariant summand poset and the norm-class tables, built lazily.
pub struct TraceContext {
    level: Level,
    gl: Arc<FiniteLinearGroup>,
    strata: OnceLock<Result<EquivariantStrata, String>>,
    norms: Mutex<HashMap<(usize, usize), Arc<NormData>>>,
}

impl TraceContext {
    pub fn new(n: usize, p: u64, m: u32) -> Result<TraceContext, TestFnError> {
        let level = Level::new(n, p, m)?;
        let gl = level.group(n)?;
        if gl.quotient().is_none() {
            return Err(TestFnError::Invalid(format!("{} is too large to enumerate", gl.label())));
        }
        Ok(TraceContext { level, gl, strata: OnceLock::new(), norms: Mutex::new(HashMap::new()) })
    }

    pub fn n(&self) -> usize {
        self.level.n()
    }
    pub fn p(&self) -> u64 {
        self.level.p()
    }
    pub fn m(&self) -> u32 {
        self.level.m()
    }
    pub fn level(&self) -> &Level {
        &self.level
    }

    /// `GL_n(Z/p^m)`, on whose element ids Hecke functions are supported.
    pub fn group(&self) -> &QuotientGroup {
        self.gl.quotient().expect("checked in new")
    }

    pub fn strata(&self) -> Result<&EquivariantStrata, TestFnError> {
        let s = self.strata.get_or_init(|| EquivariantStrata::new(self.n(), self.p(), self.m()).map_err(|e| e.to_string()));
        s.as_ref().map_err(|e| TestFnError::Invalid(format!("strata: {e}")))
    }

    pub(crate) fn norm_data(&self, j: usize, r: usize) -> Result<Arc<NormData>, TestFnError> {
        if let Some(d) = self.norms.lock().unwrap().get(&(j, r)) {
            return Ok(d.clone());
        }
        let group = general_linear(j, self.p(), self.m(), r)?;
        let (conj, sig) = class_tables(&group);
        let map = class_norm_map(&group, &conj, &sig)?;
        let d = Arc::new(NormData { group, conj, sig, map });
        self.norms.lock().unwrap().insert((j, r), d.clone());
        Ok(d)
    }

    /// A sigma-fixed element of `GL_j(GR(p^m, r))` as a matrix over `Z/p^m`.
    pub(crate) fn to_base(&self, q: &QuotientGroup, x: u32) -> Result<Mat, TestFnError> {
        let ring = q.ring();
        let lr = self.level.ring();
        q.rep(x)
            .iter()
            .map(|&e| {
                let c = ring.coeffs(e);
                if c[1..].iter().any(|&v| v != 0) {
                    return Err(TestFnError::Mismatch("representative is not sigma-fixed".into()));
                }
                Ok(lr.from_int(c[0] as i64))
            })
            .collect()
    }

    pub fn h_vee(&self, h: &HeckeFunction) -> HeckeFunction {
        h_vee(self.group(), h)
    }
}

/// `h^∨(g) = h((g^{-1})^t)`.
pub fn h_vee(group: &QuotientGroup, h: &HeckeFunction) -> HeckeFunction {
    let ring = group.ring();
    h.map_elements(|x| {
        let t = fmat::transpose(&fmat::inv(ring, group.rep(x)).expect("units"));
        group.id_of(&t).expect("GL_n is closed under transpose")
    })
}

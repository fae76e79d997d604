use crate::error::TestFnError;
use lk_exact::QuadExt;
use serde::{Deserialize, Serialize};

/// One supercuspidal factor `π_i` of `GL_{d_i}`; unramified characters
/// (`d = 1`) carry their value at `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportSegment {
    pub d: usize,
    pub unramified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value_at_p: Option<QuadExt>,
}

/// JSON: `{"p":3,"segments":[{"d":1,"unramified":true,"value_at_p":{"a":"1","b":"0"}},{"d":2,"unramified":false}]}`.
/// Values lie in `Q(√p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspidalSupport {
    pub p: u64,
    pub segments: Vec<SupportSegment>,
}

impl CuspidalSupport {
    pub fn new(p: u64, segments: Vec<SupportSegment>) -> Result<CuspidalSupport, TestFnError> {
        let mut s = CuspidalSupport { p, segments };
        s.validate()?;
        Ok(s)
    }

    /// Checks the segment rules and stamps `p` on every value (it is not
    /// part of the JSON form of a value).
    pub fn validate(&mut self) -> Result<(), TestFnError> {
        for seg in &mut self.segments {
            if seg.d == 0 {
                return Err(TestFnError::Invalid("segment of degree 0".into()));
            }
            match (&mut seg.value_at_p, seg.unramified) {
                (Some(v), true) => {
                    if seg.d != 1 {
                        return Err(TestFnError::Invalid("unramified characters have degree 1".into()));
                    }
                    v.p = self.p as i64;
                    if v.is_zero() {
                        return Err(TestFnError::Invalid("value at p must be nonzero".into()));
                    }
                }
                (None, false) => {}
                (None, true) => return Err(TestFnError::Invalid("unramified segment without a value at p".into())),
                (Some(_), false) => return Err(TestFnError::Invalid("only unramified segments carry a value".into())),
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.segments.iter().map(|s| s.d).sum()
    }

    /// The trivial representation of `GL_n`: characters `|·|^{(n+1)/2 − i}`,
    /// valued `p^{i − (n+1)/2}` at `p`.
    pub fn trivial(n: usize, p: u64) -> CuspidalSupport {
        Self::unramified(p, (1..=n as i64).map(|i| QuadExt::sqrt_p_pow(p as i64, 2 * i - n as i64 - 1)).collect())
    }

    pub fn unramified(p: u64, values: Vec<QuadExt>) -> CuspidalSupport {
        let segments = values.into_iter().map(|v| SupportSegment { d: 1, unramified: true, value_at_p: Some(v) }).collect();
        CuspidalSupport { p, segments }
    }

    /// Twist of every unramified value by `u`.
    pub fn twist(&self, u: &QuadExt) -> CuspidalSupport {
        let segments = self
            .segments
            .iter()
            .map(|s| SupportSegment { value_at_p: s.value_at_p.as_ref().map(|v| v * u), ..s.clone() })
            .collect();
        CuspidalSupport { p: self.p, segments }
    }

    /// Support of the contragredient: unramified values inverted.
    pub fn dual(&self) -> CuspidalSupport {
        let segments = self
            .segments
            .iter()
            .map(|s| SupportSegment { value_at_p: s.value_at_p.as_ref().map(|v| v.inv().expect("nonzero")), ..s.clone() })
            .collect();
        CuspidalSupport { p: self.p, segments }
    }

    /// `Σ_{unramified i} π_i(p)^r`.
    pub fn frobenius_trace(&self, r: u32) -> QuadExt {
        let p = self.p as i64;
        self.segments
            .iter()
            .filter_map(|s| s.value_at_p.as_ref())
            .fold(QuadExt::zero(p), |acc, v| &acc + &v.pow(r as i64).expect("nonzero"))
    }
}

/// `p^{(n−1)r/2} Σ_{unramified i} π_i(p)^r`.
pub fn ss_trace_scalar(support: &CuspidalSupport, n: usize, r: u32) -> Result<QuadExt, TestFnError> {
    let mut s = support.clone();
    s.validate()?;
    if s.n() != n {
        return Err(TestFnError::Invalid(format!("support has total degree {} but n = {n}", s.n())));
    }
    let p = s.p as i64;
    Ok(&QuadExt::sqrt_p_pow(p, (n as i64 - 1) * r as i64) * &s.frobenius_trace(r))
}

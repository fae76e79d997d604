//! The acceptance matrix. Each criterion runs a family of exact checks and
//! reports how many it made and which failed.

mod cases;
mod criteria;

pub use cases::{deltas, Matrix};

use serde::Serialize;
use std::time::{Duration, Instant};

#[derive(Clone, Debug, Default, Serialize)]
pub struct Outcome {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn fail(&mut self, what: String) {
        self.checks += 1;
        self.failures.push(what);
    }
}

pub struct Criterion {
    pub id: u32,
    pub claim: &'static str,
    pub bound: Duration,
    run: fn(Matrix) -> Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub claim: &'static str,
    pub bound_seconds: u64,
    pub checks: usize,
    pub failures: Vec<String>,
    pub passed: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn within_bound(&self) -> bool {
        self.elapsed <= Duration::from_secs(self.bound_seconds)
    }

    pub fn line(&self) -> String {
        let status = if self.passed && self.within_bound() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "{status} criterion {:>2} {} ({} checks, {:.1}s of {}s)",
            self.id,
            self.claim,
            self.checks,
            self.elapsed.as_secs_f64(),
            self.bound_seconds
        );
        if !self.failures.is_empty() {
            s.push_str(&format!(": {} failures, first: {}", self.failures.len(), self.failures[0]));
        }
        s
    }
}

impl Criterion {
    pub fn run(&self, matrix: Matrix) -> CriterionReport {
        let start = Instant::now();
        let out = (self.run)(matrix);
        let elapsed = start.elapsed();
        CriterionReport {
            id: self.id,
            claim: self.claim,
            bound_seconds: self.bound.as_secs(),
            checks: out.checks,
            passed: out.failures.is_empty() && out.checks > 0,
            failures: out.failures,
            elapsed,
        }
    }
}

pub fn criteria() -> Vec<Criterion> {
    use criteria::*;
    let s = Duration::from_secs;
    vec![
        Criterion { id: 1, claim: "norm-bijection", bound: s(60), run: norm_bijection },
        Criterion { id: 2, claim: "convolution-identity", bound: s(60), run: convolution_identity },
        Criterion { id: 3, claim: "steinberg-flag-model", bound: s(600), run: steinberg_flag_model },
        Criterion { id: 4, claim: "star-condition-and-stalks", bound: s(300), run: star_and_stalks },
        Criterion { id: 5, claim: "ik0-dual-formula", bound: s(60), run: ik0_dual_formula },
        Criterion { id: 6, claim: "eqrepr-identity", bound: s(300), run: eqrepr_identity },
        Criterion { id: 7, claim: "phi-two-route-consistency", bound: s(600), run: two_route_consistency },
        Criterion { id: 8, claim: "double-coset-volume", bound: s(120), run: double_coset_volume },
        Criterion { id: 9, claim: "orbital-engine", bound: s(300), run: orbital_engine },
        Criterion { id: 10, claim: "phi-sigma-conjugation-invariance", bound: s(300), run: phi_invariance },
    ]
}

pub fn run_all(matrix: Matrix, mut each: impl FnMut(&CriterionReport)) -> Vec<CriterionReport> {
    criteria()
        .iter()
        .map(|c| {
            let r = c.run(matrix);
            each(&r);
            r
        })
        .collect()
}

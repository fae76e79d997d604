//! `lk`: JSON in, JSON out. Exit 0 when every asserted equality holds, 1 on
//! an assertion failure, 2 on malformed input, 3 on a computation error.

use clap::{Parser, Subcommand, ValueEnum};
use lk_characters::{eqrepr_check, ik0, steinberg_flag_model, steinberg_virtual, transition_complex_exactness, Level};
use lk_group::{build_quotient, certify_centralizers, class_norm_map, class_tables, ClassTable, ConvolutionContext, IntegralModelSpec, QuotientGroup};
use lk_orbital::{orbital_integral, twisted_orbital_integral, SupportSpec};
use lk_padic::{default_precision, PadicInput, PadicMatrix};
use lk_strata::{check_star, compute_w_spaces, stalk_dims, StrataPoset, StratumInput};
use lk_testfn::{ss_trace_scalar, CuspidalSupport, HeckeFunction, HeckeInput, TraceContext};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "lk", version, about = "Finite and p-adic checks for GL_n test functions")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupReport {
    Classes,
    NormMap,
    BcIdentity,
}

#[derive(Clone, Copy, ValueEnum)]
enum CharOp {
    Steinberg,
    Ik0,
    Eqrepr,
    Complex,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrataCheck {
    Star,
    Stalks,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrbitalMode {
    Plain,
    Twisted,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixArg {
    Small,
    Smoke,
}

#[derive(Subcommand)]
enum Command {
    /// Class tables, the norm map and the convolution identity of a finite quotient group.
    GroupQuotient {
        /// Integral model spec (file or inline JSON).
        #[arg(long)]
        spec: String,
        /// `{"p":2,"m":1,"r":2}` (file or inline JSON).
        #[arg(long)]
        ring: String,
        #[arg(long, value_enum)]
        report: GroupReport,
    },
    /// Characters of GL_k(Z/p^m) built from flags of direct summands.
    Characters {
        #[arg(long, value_enum)]
        op: CharOp,
        #[arg(long, visible_alias = "n")]
        k: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
    /// Condition (∗) and stalk dimensions for a stratification poset.
    Strata {
        /// JSON list of {id, codim, contains} (file or inline JSON).
        #[arg(long)]
        poset: String,
        #[arg(long, value_enum)]
        check: StrataCheck,
        /// Stratum whose open part contains the point (stalks only).
        #[arg(long)]
        point: Option<String>,
        /// Degree of the stalk; every degree when omitted.
        #[arg(long)]
        k: Option<usize>,
    },
    /// The test function φ_h at δ₀.
    PhiH {
        #[arg(long)]
        h: String,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        r: u32,
        /// Overrides the precision in the δ₀ file.
        #[arg(long)]
        precision: Option<u32>,
        /// Also compare with the route through the nearby-cycle stalks.
        #[arg(long)]
        consistency: bool,
    },
    /// Semisimple trace of Frobenius^r from cuspidal support data.
    SsScalar {
        #[arg(long)]
        support: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: u32,
    },
    /// Orbital and twisted orbital integrals by lattice enumeration.
    Orbital {
        #[arg(long, value_enum)]
        mode: OrbitalMode,
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        support: String,
        #[arg(long, default_value_t = 3)]
        depth: u32,
    },
    /// Run the acceptance matrix.
    VerifyAll {
        #[arg(long, value_enum, default_value = "small")]
        matrix: MatrixArg,
    },
}

enum Failure {
    Schema(String),
    Compute(String),
}

type Outcome = Result<(Value, bool), Failure>;

fn schema(e: impl std::fmt::Display) -> Failure {
    Failure::Schema(e.to_string())
}

fn compute(e: impl std::fmt::Display) -> Failure {
    Failure::Compute(e.to_string())
}

/// Inline JSON when the argument starts with `{` or `[`, a file path otherwise.
fn load<T: DeserializeOwned>(what: &str, arg: &str) -> Result<T, Failure> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Schema(format!("{what}: cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Schema(format!("{what}: {e}")))
}

fn to_value(x: &impl serde::Serialize) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn report(claim: &str, inputs: Value, outputs: Value, holds: bool) -> (Value, bool) {
    (json!({ "claim": claim, "inputs": inputs, "outputs": outputs, "holds": holds }), holds)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RingArg {
    p: u64,
    m: u32,
    r: usize,
}

fn table_json(q: &QuotientGroup, t: &ClassTable) -> Value {
    let classes: Vec<Value> = t
        .classes
        .iter()
        .map(|c| json!({ "rep": q.matrix_json(c.rep), "size": c.size, "centralizer": c.centralizer }))
        .collect();
    json!({ "kind": to_value(&t.kind), "acting_size": t.group_size, "classes": classes })
}

fn group_quotient(spec: &str, ring: &str, which: GroupReport) -> Outcome {
    let spec: IntegralModelSpec = load("spec", spec)?;
    let ring: RingArg = load("ring", ring)?;
    let params = lk_ring::make_ring(ring.p, ring.m, ring.r).map_err(schema)?;
    let q = build_quotient(&spec, &params).map_err(schema)?;
    let inputs = json!({ "spec": to_value(&spec), "ring": { "p": ring.p, "m": ring.m, "r": ring.r }, "order": q.size() });
    let (conj, sig) = class_tables(&q);
    match which {
        GroupReport::Classes => {
            let holds = conj.orbit_stabilizer_holds() && sig.orbit_stabilizer_holds();
            let out = json!({ "conjugacy": table_json(&q, &conj), "sigma_conjugacy": table_json(&q, &sig) });
            Ok(report("orbit-stabilizer on both class tables", inputs, out, holds))
        }
        GroupReport::NormMap => {
            let nm = class_norm_map(&q, &conj, &sig).map_err(compute)?;
            let all: Vec<u32> = (0..q.size() as u32).collect();
            let cent = certify_centralizers(&q, &sig, &all) && certify_centralizers(&q, &conj, &q.sigma_fixed());
            let entries: Vec<Value> = nm
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "sigma_class_rep": q.matrix_json(sig.classes[e.sigma_class as usize].rep),
                        "member": q.matrix_json(e.member),
                        "norm": q.matrix_json(e.norm),
                        "conj_class_rep": q.matrix_json(conj.classes[e.conj_class as usize].rep),
                        "sigma_centralizer": e.sigma_centralizer,
                        "centralizer": e.centralizer,
                        "via_fallback": e.via_fallback,
                    })
                })
                .collect();
            let out = json!({ "bijection": entries, "certificate": to_value(&nm.certificate), "centralizers_certified": cent });
            let holds = nm.certificate.holds() && cent;
            Ok(report("sigma-conjugacy classes biject with conjugacy classes of the fixed group via the norm", inputs, out, holds))
        }
        GroupReport::BcIdentity => {
            let ctx = ConvolutionContext::new(&q, &q).map_err(compute)?;
            let rep = ctx.exhaustive();
            let holds = rep.holds();
            Ok(report("averaged convolution matches the class function at the norm", inputs, to_value(&rep), holds))
        }
    }
}

fn characters(op: CharOp, k: usize, p: u64, m: u32, r: u32) -> Outcome {
    let inputs = json!({ "k": k, "p": p, "m": m, "r": r });
    let level = Level::new(k, p, m).map_err(schema)?;
    match op {
        CharOp::Steinberg => {
            let (dim, chi) = steinberg_flag_model(&level, k).map_err(compute)?;
            let alt = steinberg_virtual(&level, k).map_err(compute)?;
            let diff = chi.differences(&alt);
            let out = json!({ "dim": dim, "values": to_value(&chi.entries()), "alternating_sum_differs_at": diff });
            Ok(report("flag-kernel Steinberg equals the alternating sum of induced trivial characters", inputs, out, diff.is_empty()))
        }
        CharOp::Ik0 => {
            let chi = ik0(&level, k, r).map_err(compute)?;
            Ok(report("the two formulas for I_k^0 agree and are self-dual", inputs, json!({ "values": to_value(&chi.entries()) }), true))
        }
        CharOp::Eqrepr => {
            let rep = eqrepr_check(&level, k, r).map_err(compute)?;
            let holds = rep.holds();
            Ok(report("level-m identity of representations behind the semisimple trace", inputs, to_value(&rep), holds))
        }
        CharOp::Complex => {
            let rep = transition_complex_exactness(k, p, m).map_err(compute)?;
            let holds = rep.holds();
            Ok(report("the transition complex of Steinberg modules is exact", inputs, to_value(&rep), holds))
        }
    }
}

fn strata(poset: &str, check: StrataCheck, point: Option<&str>, k: Option<usize>) -> Outcome {
    let items: Vec<StratumInput> = load("poset", poset)?;
    let poset = StrataPoset::from_input(&items).map_err(schema)?;
    let w = compute_w_spaces(&poset);
    let star = check_star(&poset, &w);
    let inputs = json!({ "strata": items.len(), "point": point, "k": k });
    match check {
        StrataCheck::Star => {
            let holds = star.holds;
            Ok(report("condition (∗): every local complex of W-spaces is exact", inputs, to_value(&star), holds))
        }
        StrataCheck::Stalks => {
            let point = point.ok_or_else(|| Failure::Schema("--check stalks needs --point".into()))?;
            poset.elem(point).map_err(schema)?;
            let ks: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (0..=poset.max_codim()).collect(),
            };
            let mut out = Vec::new();
            for k in ks {
                out.push(to_value(&stalk_dims(&poset, &w, &star, point, k).map_err(compute)?));
            }
            Ok(report("stalk dimensions of nearby cycles from the W-spaces", inputs, Value::Array(out), true))
        }
    }
}

fn phi_h(h: &str, delta: &str, r: u32, precision: Option<u32>, consistency: bool) -> Outcome {
    let h_in: HeckeInput = load("h", h)?;
    let mut d_in: PadicInput = load("delta", delta)?;
    if precision.is_some() {
        d_in.precision = precision;
    }
    let n = d_in.entries.len();
    let d = PadicMatrix::from_input(&d_in, default_precision(h_in.m, n, r as usize)).map_err(schema)?;
    let ctx = TraceContext::new(h_in.n, h_in.p, h_in.m).map_err(schema)?;
    let h = HeckeFunction::from_input(&h_in, ctx.group()).map_err(schema)?;
    let value = ctx.phi(&h, &d, r).map_err(compute)?;
    let inputs = json!({ "h": to_value(&h_in), "delta": to_value(&d.to_input()), "r": r });
    if consistency {
        let c = ctx.consistency(&h, &d, r).map_err(compute)?;
        let holds = c.equal;
        let out = json!({ "phi": to_value(&value), "consistency": to_value(&c) });
        Ok(report("φ_h equals the semisimple trace of Frobenius on nearby cycles", inputs, out, holds))
    } else {
        Ok(report("value of the test function φ_h", inputs, to_value(&value), true))
    }
}

fn ss_scalar(support: &str, n: usize, r: u32) -> Outcome {
    let mut s: CuspidalSupport = load("support", support)?;
    s.validate().map_err(schema)?;
    let v = ss_trace_scalar(&s, n, r).map_err(compute)?;
    let inputs = json!({ "support": to_value(&s), "n": n, "r": r });
    Ok(report("semisimple trace scalar from cuspidal support", inputs, json!({ "scalar": to_value(&v) }), true))
}

fn orbital(mode: OrbitalMode, gamma: &str, support: &str, depth: u32) -> Outcome {
    let g_in: PadicInput = load("gamma", gamma)?;
    let f: SupportSpec = load("support", support)?;
    f.validate().map_err(schema)?;
    let n = g_in.entries.len();
    let g = PadicMatrix::from_input(&g_in, 2 * n as u32 * (depth + 2) + 8).map_err(schema)?;
    let rep = match mode {
        OrbitalMode::Plain => orbital_integral(&f, &g, depth),
        OrbitalMode::Twisted => twisted_orbital_integral(&f, &g, depth),
    }
    .map_err(compute)?;
    let cosets: Vec<usize> = rep.sums.iter().map(|s| s.classes).collect();
    let inputs = json!({ "gamma": to_value(&g.to_input()), "support": to_value(&f), "depth": depth });
    let out = json!({
        "status": rep.status(),
        "value": to_value(&rep).get("value").cloned(),
        "certified_depth": rep.certified_depth,
        "coset_count": cosets,
        "report": to_value(&rep),
    });
    let claim = match mode {
        OrbitalMode::Plain => "orbital integral by lattice enumeration",
        OrbitalMode::Twisted => "twisted orbital integral by lattice enumeration",
    };
    Ok(report(claim, inputs, out, true))
}

fn verify_all(matrix: MatrixArg) -> Outcome {
    let m = match matrix {
        MatrixArg::Small => lk_suite::Matrix::Small,
        MatrixArg::Smoke => lk_suite::Matrix::Smoke,
    };
    let reports = lk_suite::run_all(m, |r| eprintln!("{}", r.line()));
    let holds = reports.iter().all(|r| r.passed && r.within_bound());
    let inputs = json!({ "matrix": to_value(&m) });
    Ok(report("acceptance matrix", inputs, to_value(&reports), holds))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::GroupQuotient { spec, ring, report } => group_quotient(spec, ring, *report),
        Command::Characters { op, k, p, m, r } => characters(*op, *k, *p, *m, *r),
        Command::Strata { poset, check, point, k } => strata(poset, *check, point.as_deref(), *k),
        Command::PhiH { h, delta, r, precision, consistency } => phi_h(h, delta, *r, *precision, *consistency),
        Command::SsScalar { support, n, r } => ss_scalar(support, *n, *r),
        Command::Orbital { mode, gamma, support, depth } => orbital(*mode, gamma, support, *depth),
        Command::VerifyAll { matrix } => verify_all(*matrix),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, holds)) => {
            let text = serde_json::to_string_pretty(&value).expect("json") + "\n";
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(3);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(if holds { 0 } else { 1 })
        }
        Err(Failure::Schema(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

//! Problem files and the report-producing commands behind the `gkz` binary.
//!
//! A problem is one TOML or JSON document (chosen by file extension):
//!
//! ```toml
//! A = [[1, 0], [1, 2], [1, 1]]
//! beta = ["10", "8"]
//! u = [0, 0]          # optional
//! lift = [0, 0, 0]    # optional, must map to u
//! window = [-10, 20]  # optional
//! r = 1               # optional: build only this log degree
//! verify = true       # optional
//! alternates = [["0", "-2", "1"]]  # optional exponents outside E'
//! ```
//!
//! Rationals are always strings, `"p/q"` or `"n"`. Reports are JSON with a
//! fixed key order, or an indented text rendering of the same data.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::classify::{classify, MumVerdict, SingularityType};
use crate::error::{Error, Result};
use crate::exponents::{exponent_set_prime, Exponent, SupportVerdict, ZInterval};
use crate::lattice::{build_config, is_nonresonant, volume_crosscheck, LatticeConfig, Parameter, PointConfig};
use crate::rational::{fmt_vec, parse_rat, Rat};
use crate::series::{solution_bundle_from_lift, BundleReport, LogSeriesWire, Window};
use crate::verify::{certify, ReportWire};

pub const DEFAULT_WINDOW: [i64; 2] = [-10, 20];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    pub beta: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default = "default_verify")]
    pub verify: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alternates: Vec<Vec<String>>,
}

fn default_verify() -> bool {
    true
}

impl ProblemSpec {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::Parse(format!("TOML: {}", e.message())))
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("JSON: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        match path.extension().and_then(|e| e.to_str()) {
            Some("toml") => Self::from_toml_str(&text),
            Some("json") => Self::from_json_str(&text),
            _ => Err(Error::Parse(format!("{}: expected a .toml or .json file", path.display()))),
        }
    }
}

/// Command-line overrides of the problem file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub window: Option<[i64; 2]>,
    pub u: Option<Vec<i64>>,
    pub lift: Option<Vec<i64>>,
    pub r: Option<usize>,
    pub no_verify: bool,
}

/// `"LO:HI"`.
pub fn parse_window(s: &str) -> Result<[i64; 2]> {
    let bad = || Error::Parse(format!("--window: expected LO:HI, got '{s}'"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(Error::Parse(format!("--window: {lo} > {hi}")));
    }
    Ok([lo, hi])
}

/// `"c1,c2,..."`.
pub fn parse_int_list(flag: &str, s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("{flag}: '{t}' is not an integer"))))
        .collect()
}

fn parse_rat_field(field: &str, values: &[String]) -> Result<Vec<Rat>> {
    values
        .iter()
        .enumerate()
        .map(|(i, s)| parse_rat(s).ok_or_else(|| Error::Parse(format!("{field}[{i}]: invalid rational '{s}'"))))
        .collect()
}

fn field_len(field: &str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Parse(format!("{field}: expected {expected} entries, found {found}")))
    }
}

/// A validated problem.
#[derive(Debug, Clone)]
pub struct Problem {
    pub config: LatticeConfig,
    pub beta: Parameter,
    pub u: Vec<i64>,
    pub lift: Vec<i64>,
    pub window: Window,
    pub r: Option<usize>,
    pub verify: bool,
    pub alternates: Vec<Vec<Rat>>,
}

impl Problem {
    pub fn resolve(spec: &ProblemSpec, overrides: &Overrides) -> Result<Self> {
        let points = PointConfig::new(spec.a.clone())?;
        let config = build_config(points)?;
        let (d, n) = (config.d(), config.n());
        field_len("beta", d, spec.beta.len())?;
        let beta = Parameter::new(&config, parse_rat_field("beta", &spec.beta)?)?;

        let u = overrides.u.clone().or_else(|| spec.u.clone());
        let lift = overrides.lift.clone().or_else(|| spec.lift.clone());
        if let Some(u) = &u {
            field_len("u", d, u.len())?;
        }
        if let Some(l) = &lift {
            field_len("lift", n, l.len())?;
        }
        let (u, lift) = match (u, lift) {
            (Some(u), Some(l)) => {
                if config.combine_int(&l) != u {
                    return Err(Error::InvalidLift);
                }
                (u, l)
            }
            (None, Some(l)) => (config.combine_int(&l), l),
            (Some(u), None) => {
                let l = config.integer_lift(&u)?;
                (u, l)
            }
            (None, None) => (vec![0; d], vec![0; n]),
        };

        let [lo, hi] = overrides.window.or(spec.window).unwrap_or(DEFAULT_WINDOW);
        if lo > hi {
            return Err(Error::Parse(format!("window: {lo} > {hi}")));
        }
        let alternates = spec
            .alternates
            .iter()
            .enumerate()
            .map(|(i, a)| {
                field_len(&format!("alternates[{i}]"), n, a.len())?;
                parse_rat_field(&format!("alternates[{i}]"), a)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            config,
            beta,
            u,
            lift,
            window: Window::new(lo, hi),
            r: overrides.r.or(spec.r),
            verify: spec.verify && !overrides.no_verify,
            alternates,
        })
    }

    pub fn parameter(&self) -> Vec<Rat> {
        self.beta.shifted(&self.u).beta().to_vec()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Exponents,
    Solve,
    Verify,
    Classify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Rendered output plus process exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.report).expect("report serializes"),
            Format::Text => {
                let mut out = String::new();
                render_text(&self.report, 0, &mut out);
                out
            }
        }
    }
}

pub fn error_report(e: &Error) -> Outcome {
    Outcome { report: serde_json::json!({ "error": e.to_string() }), exit_code: e.exit_code() }
}

pub fn run(command: Command, problem: &Problem) -> Result<Outcome> {
    match command {
        Command::Analyze => Ok(ok(analyze(problem))),
        Command::Exponents => exponents(problem).map(ok),
        Command::Solve => solve(problem),
        Command::Verify => verify(problem),
        Command::Classify => classify_cmd(problem),
    }
}

/// Reads, resolves and runs; any error becomes an `{"error": ...}` report.
pub fn run_file(command: Command, path: &Path, overrides: &Overrides) -> Outcome {
    let result = ProblemSpec::from_path(path)
        .and_then(|spec| Problem::resolve(&spec, overrides))
        .and_then(|p| run(command, &p));
    result.unwrap_or_else(|e| error_report(&e))
}

fn ok<T: Serialize>(report: T) -> Outcome {
    Outcome { report: serde_json::to_value(report).expect("report serializes"), exit_code: 0 }
}

#[derive(Serialize)]
struct WitnessWire {
    i: usize,
    j: usize,
    value: String,
}

#[derive(Serialize)]
struct AnalyzeReport {
    points: Vec<Vec<i64>>,
    d: usize,
    n: usize,
    relation: Vec<i64>,
    positive_indices: Vec<usize>,
    negative_indices: Vec<usize>,
    k: usize,
    positive_sum: u64,
    negative_sum: u64,
    vol: u64,
    vol_from_simplices: u64,
    singularity: &'static str,
    regular: bool,
    beta: Vec<String>,
    nonresonant: bool,
    resonance_witness: Option<WitnessWire>,
}

fn singularity_name(s: SingularityType) -> &'static str {
    match s {
        SingularityType::Regular => "regular",
        SingularityType::Irregular => "irregular",
    }
}

fn analyze(p: &Problem) -> AnalyzeReport {
    let c = &p.config;
    let nr = is_nonresonant(c, &p.beta);
    let singularity = crate::classify::singularity_type(c);
    AnalyzeReport {
        points: c.points().columns().to_vec(),
        d: c.d(),
        n: c.n(),
        relation: c.relation().to_vec(),
        positive_indices: c.positive_indices(),
        negative_indices: c.negative_indices(),
        k: c.k(),
        positive_sum: c.positive_sum(),
        negative_sum: c.negative_sum(),
        vol: c.vol(),
        vol_from_simplices: volume_crosscheck(c),
        singularity: singularity_name(singularity),
        regular: singularity == SingularityType::Regular,
        beta: fmt_vec(p.beta.beta()),
        nonresonant: nr.nonresonant,
        resonance_witness: nr.witness.map(|w| WitnessWire { i: w.i, j: w.j, value: w.value.to_string() }),
    }
}

#[derive(Serialize)]
struct FakeWire {
    v: Vec<String>,
    labels: Vec<(usize, i64)>,
    in_e_prime: bool,
}

#[derive(Serialize)]
struct PrimeWire {
    v: Vec<String>,
    multiplicity: usize,
    m_set: Vec<usize>,
}

#[derive(Serialize)]
struct ExponentsReport {
    beta: Vec<String>,
    fake: Vec<FakeWire>,
    e_prime: Vec<PrimeWire>,
    multiplicity_sum: u64,
    relation_sum: u64,
    tally_ok: bool,
}

fn prime_wire(e: &Exponent) -> PrimeWire {
    PrimeWire { v: fmt_vec(&e.v), multiplicity: e.multiplicity(), m_set: e.m_set.clone() }
}

fn exponents(p: &Problem) -> Result<ExponentsReport> {
    let set = exponent_set_prime(&p.config, &p.beta)?;
    Ok(ExponentsReport {
        beta: fmt_vec(p.beta.beta()),
        fake: set
            .fake
            .iter()
            .map(|e| FakeWire { v: fmt_vec(&e.v), labels: e.labels.clone(), in_e_prime: e.is_in_e_prime(&p.config) })
            .collect(),
        e_prime: set.e_prime.iter().map(prime_wire).collect(),
        multiplicity_sum: set.multiplicity_sum,
        relation_sum: set.relation_sum,
        tally_ok: set.multiplicity_sum == set.relation_sum,
    })
}

#[derive(Serialize)]
struct IntervalWire {
    lo: Option<i64>,
    hi: Option<i64>,
}

#[derive(Serialize)]
struct VerdictWire {
    index_set: Vec<usize>,
    minimal: bool,
    membership: Vec<IntervalWire>,
}

fn verdict_wire(v: &SupportVerdict) -> VerdictWire {
    VerdictWire {
        index_set: v.index_set.clone(),
        minimal: v.minimal,
        membership: v.membership.iter().map(|&ZInterval { lo, hi }| IntervalWire { lo, hi }).collect(),
    }
}

#[derive(Serialize)]
struct SolutionWire {
    r: usize,
    series: LogSeriesWire,
    certificates: Vec<VerdictWire>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    operators: Option<Vec<ReportWire>>,
}

#[derive(Serialize)]
struct BundleWire {
    exponent: Vec<String>,
    multiplicity: usize,
    alternate: bool,
    phi_vanishes: bool,
    stopped_by: Option<String>,
    solutions: Vec<SolutionWire>,
}

#[derive(Serialize)]
struct SolveReport {
    parameter: Vec<String>,
    u: Vec<i64>,
    lift: Vec<i64>,
    window: [i64; 2],
    bundles: Vec<BundleWire>,
    independent_count: u64,
    relation_sum: u64,
    complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    all_verified: Option<bool>,
}

fn bundle_report(p: &Problem) -> Result<BundleReport> {
    let set = exponent_set_prime(&p.config, &p.beta)?;
    solution_bundle_from_lift(&p.config, &p.beta, &set.e_prime, &p.lift, p.window, p.r, &p.alternates)
}

fn solve_report(p: &Problem, verify: bool) -> Result<SolveReport> {
    let report = bundle_report(p)?;
    let parameter = p.parameter();
    let mut all = true;
    let bundles = report
        .bundles
        .iter()
        .map(|b| BundleWire {
            exponent: fmt_vec(&b.exponent.v),
            multiplicity: b.exponent.multiplicity(),
            alternate: b.alternate,
            phi_vanishes: b.phi_vanishes,
            stopped_by: b.stopped_by.as_ref().map(Error::to_string),
            solutions: b
                .solutions
                .iter()
                .map(|s| {
                    let cert = verify.then(|| certify(&p.config, &parameter, &s.series));
                    if let Some(c) = &cert {
                        all &= c.passed;
                    }
                    SolutionWire {
                        r: s.r,
                        series: s.series.to_wire(),
                        certificates: s.certificates.iter().map(verdict_wire).collect(),
                        verified: cert.as_ref().map(|c| c.passed),
                        operators: cert.as_ref().map(|c| c.to_wire()),
                    }
                })
                .collect(),
        })
        .collect();
    Ok(SolveReport {
        parameter: fmt_vec(&parameter),
        u: p.u.clone(),
        lift: p.lift.clone(),
        window: [p.window.lo, p.window.hi],
        bundles,
        independent_count: report.independent_count,
        relation_sum: report.relation_sum,
        complete: report.complete,
        all_verified: verify.then_some(all),
    })
}

fn solve(p: &Problem) -> Result<Outcome> {
    let report = solve_report(p, p.verify)?;
    let exit_code = if report.all_verified == Some(false) { 1 } else { 0 };
    let mut out = ok(report);
    out.exit_code = exit_code;
    Ok(out)
}

#[derive(Serialize)]
struct VerifyEntry {
    exponent: Vec<String>,
    r: usize,
    passed: bool,
    operators: Vec<ReportWire>,
}

#[derive(Serialize)]
struct VerifyReport {
    parameter: Vec<String>,
    window: [i64; 2],
    passed: bool,
    solutions: Vec<VerifyEntry>,
}

/// Builds every solution and certifies it; exit status 1 on any failure.
fn verify(p: &Problem) -> Result<Outcome> {
    let report = bundle_report(p)?;
    let parameter = p.parameter();
    let mut solutions = Vec::new();
    for b in &report.bundles {
        for s in &b.solutions {
            let cert = certify(&p.config, &parameter, &s.series);
            solutions.push(VerifyEntry {
                exponent: fmt_vec(&b.exponent.v),
                r: s.r,
                passed: cert.passed,
                operators: cert.to_wire(),
            });
        }
    }
    let passed = solutions.iter().all(|s| s.passed);
    let mut out = ok(VerifyReport { parameter: fmt_vec(&parameter), window: [p.window.lo, p.window.hi], passed, solutions });
    out.exit_code = if passed { 0 } else { 1 };
    Ok(out)
}

#[derive(Serialize)]
struct MumWire {
    e_prime_size: usize,
    integral_on_positive_side: bool,
    unit_positive_entries: bool,
    in_negative_span: bool,
    consistent: bool,
}

#[derive(Serialize)]
struct ClassifyReport {
    singularity: &'static str,
    regular: bool,
    nonresonant: bool,
    applicable: bool,
    mum: Option<bool>,
    mum_holomorphic: Option<bool>,
    reason: Option<String>,
    witness: Option<MumWire>,
}

fn classify_cmd(p: &Problem) -> Result<Outcome> {
    let cl = classify(&p.config, &p.beta)?;
    let base = ClassifyReport {
        singularity: singularity_name(cl.singularity),
        regular: cl.regular(),
        nonresonant: cl.nonresonant,
        applicable: false,
        mum: None,
        mum_holomorphic: None,
        reason: None,
        witness: None,
    };
    match cl.mum {
        MumVerdict::Decided(r) => {
            let consistent = r.consistent();
            let report = ClassifyReport {
                applicable: true,
                mum: Some(r.mum),
                mum_holomorphic: Some(r.mum_holomorphic),
                witness: Some(MumWire {
                    e_prime_size: r.e_prime_size,
                    integral_on_positive_side: r.integral_on_positive_side,
                    unit_positive_entries: r.unit_positive_entries,
                    in_negative_span: r.in_negative_span,
                    consistent,
                }),
                ..base
            };
            let mut out = ok(report);
            out.exit_code = if consistent { 0 } else { 1 };
            Ok(out)
        }
        MumVerdict::NotApplicable(e) => {
            let code = e.exit_code();
            let mut out = ok(ClassifyReport { reason: Some(e.to_string()), ..base });
            out.exit_code = code;
            Ok(out)
        }
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_scalar_like(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_text(x, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_scalar_like(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(x, indent + 1, out);
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", inline(x))),
    }
}

fn is_scalar_like(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_object() && !x.is_array() || is_flat_array(x)),
        Value::Object(_) => false,
        _ => true,
    }
}

fn is_flat_array(v: &Value) -> bool {
    matches!(v, Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()))
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        x => x.to_string(),
    }
}

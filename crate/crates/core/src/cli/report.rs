//! Command results and their text, JSON and CSV renderings. All numbers are
//! printed exactly; floats appear only as labelled approximations in text.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::analysis::roots::{FutRoots, IsolatedRoot, OpenInterval};
use crate::analysis::validate::{CurvePoint, ValidationRecord};
use crate::arith::{format_rational, rat, Rational, RationalFunction};
use crate::localization::ValidationReport;
use crate::toric::MinkowskiOutcome;

use super::{EXIT_MISMATCH, EXIT_OK, EXIT_VALIDATION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Structured,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Self::Text),
            "structured" | "json" => Ok(Self::Structured),
            "csv" => Ok(Self::Csv),
            other => Err(format!("unknown format `{other}` (text, structured, csv)")),
        }
    }
}

/// Result of `localize`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub name: String,
    pub m: u32,
    pub var: String,
    pub interval: Option<OpenInterval>,
    /// `∫ c_1(L_α)^m` per bundle.
    pub volumes: Vec<RationalFunction>,
    /// `∫ (u_α + c_1(L_α))^{m+1}` per bundle.
    pub numerators: Vec<RationalFunction>,
    pub fut: RationalFunction,
    pub roots: Option<FutRoots>,
    /// Fut at a requested parameter value.
    pub value: Option<(Rational, Rational)>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeSummary {
    pub vertices: usize,
    pub facets: usize,
    pub volume: Rational,
    pub moment: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricReport {
    pub x: Rational,
    pub direction: Vec<i64>,
    pub polytopes: Vec<PolytopeSummary>,
    pub fut: Rational,
    pub minkowski: Option<MinkowskiOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub name: String,
    pub direction: Vec<i64>,
    pub record: ValidationRecord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleReport {
    pub var: String,
    pub points: Vec<CurvePoint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Output {
    Localize(Box<ObstructionReport>),
    Toric(ToricReport),
    Roots { fut: RationalFunction, roots: FutRoots },
    Verify(VerifyReport),
    Sample(SampleReport),
    Validate(ValidationReport),
}

impl Output {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Verify(v) if !v.record.all_equal() => EXIT_MISMATCH,
            Self::Validate(r) if !r.is_valid() => EXIT_VALIDATION,
            _ => EXIT_OK,
        }
    }
}

pub fn provenance_notes(m: u32) -> Vec<String> {
    vec![
        format!(
            "prefactor: Fut includes the factor 1/(m+1) = 1/{}; sum_alpha N_alpha/V_alpha without it is {} times larger",
            m + 1,
            m + 1
        ),
        "normalization: classes in Chern normalization; int c_1(L)^m = m! Vol(P) and moments are int_P <y, xi> dy"
            .to_string(),
    ]
}

pub fn emit(output: &Output, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => text(output),
        OutputFormat::Structured => {
            let mut s = serde_json::to_string_pretty(&structured(output)).expect("json");
            s.push('\n');
            s
        }
        OutputFormat::Csv => csv(output),
    }
}

fn q(x: &Rational) -> String {
    format_rational(x)
}

fn approx(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn interval_text(i: &OpenInterval) -> String {
    format!("({}, {})", q(&i.lower), q(&i.upper))
}

fn root_text(r: &IsolatedRoot) -> String {
    let mut line = String::new();
    if let Some(cf) = &r.closed_form {
        let _ = write!(line, "{cf}  ");
    }
    let _ = write!(
        line,
        "in [{}, {}]  ~{:.10}",
        q(&r.lower),
        q(&r.upper),
        r.approx()
    );
    if r.multiplicity > 1 {
        let _ = write!(line, "  multiplicity {}", r.multiplicity);
    }
    line
}

fn roots_text(out: &mut String, var: &str, roots: &FutRoots) {
    let report = &roots.report;
    let _ = writeln!(
        out,
        "zeros in {}: {}",
        interval_text(&report.interval),
        report.roots.len()
    );
    for r in &report.roots {
        let _ = writeln!(out, "  {var} = {}", root_text(r));
    }
    for pole in &roots.poles {
        let place = if pole.inside { "inside" } else { "outside" };
        let _ = writeln!(out, "  pole {var} = {} ({place})", root_text(&pole.location));
    }
}

fn minkowski_text(m: &MinkowskiOutcome) -> String {
    match m {
        MinkowskiOutcome::Pass => "pass".into(),
        MinkowskiOutcome::Fail { normal, sum, whole } => format!(
            "fail at normal {normal:?}: parts sum to {}, whole has {}",
            q(sum),
            q(whole)
        ),
        MinkowskiOutcome::Inconclusive { reason } => format!("inconclusive ({reason})"),
    }
}

fn text(output: &Output) -> String {
    let mut out = String::new();
    match output {
        Output::Localize(r) => {
            let _ = writeln!(out, "scenario: {}", r.name);
            for (i, v) in r.volumes.iter().enumerate() {
                let _ = writeln!(out, "volume[{}] = {}", i + 1, v.to_factored_string());
            }
            for (i, n) in r.numerators.iter().enumerate() {
                let _ = writeln!(out, "numerator[{}] = {}", i + 1, n.to_factored_string());
            }
            let _ = writeln!(out, "Fut({}) = {}", r.var, r.fut.to_factored_string());
            if let Some((x, v)) = &r.value {
                let _ = writeln!(out, "Fut({}) = {}  ~{:.10}", q(x), q(v), approx(v));
            }
            if let Some(roots) = &r.roots {
                roots_text(&mut out, &r.var, roots);
            }
            for w in &r.warnings {
                let _ = writeln!(out, "warning: {w}");
            }
            for n in &r.notes {
                let _ = writeln!(out, "note: {n}");
            }
        }
        Output::Roots { fut, roots } => {
            let _ = writeln!(out, "Fut = {}", fut.to_factored_string());
            roots_text(&mut out, fut.var(), roots);
        }
        Output::Toric(t) => {
            let _ = writeln!(out, "parameter = {}, direction = {:?}", q(&t.x), t.direction);
            for (i, p) in t.polytopes.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "polytope[{}]: {} vertices, {} facets, volume {}, moment {}",
                    i + 1,
                    p.vertices,
                    p.facets,
                    q(&p.volume),
                    q(&p.moment)
                );
            }
            let _ = writeln!(out, "Fut_toric = {}", q(&t.fut));
            if let Some(m) = &t.minkowski {
                let _ = writeln!(out, "minkowski: {}", minkowski_text(m));
            }
        }
        Output::Verify(v) => {
            let _ = writeln!(out, "scenario: {}, direction = {:?}", v.name, v.direction);
            for s in &v.record.samples {
                let mark = if s.equal { "equal" } else { "MISMATCH" };
                let _ = writeln!(
                    out,
                    "{}: localized {}  toric {}  {mark}",
                    q(&s.x),
                    q(&s.localized),
                    q(&s.toric)
                );
                for (i, vol) in s.volumes.iter().enumerate() {
                    let mark = if vol.equal { "equal" } else { "MISMATCH" };
                    let _ = writeln!(
                        out,
                        "  volume[{}]: localized/m! {}  toric {}  {mark}",
                        i + 1,
                        q(&vol.localized),
                        q(&vol.toric)
                    );
                }
            }
            let verdict = if v.record.all_equal() { "all equal" } else { "mismatch" };
            let _ = writeln!(out, "result: {verdict}");
        }
        Output::Sample(s) => {
            for p in &s.points {
                match &p.value {
                    Some(v) => {
                        let _ = writeln!(out, "{} = {}: {}  ~{:.10}", s.var, q(&p.x), q(v), approx(v));
                    }
                    None => {
                        let _ = writeln!(out, "{} = {}: pole", s.var, q(&p.x));
                    }
                }
            }
        }
        Output::Validate(r) => {
            let verdict = if r.is_valid() { "valid" } else { "invalid" };
            let _ = writeln!(out, "scenario is {verdict}");
            for (i, v) in r.volumes.iter().enumerate() {
                if let Some(v) = v {
                    let _ = writeln!(out, "volume[{}] = {}", i + 1, v.to_factored_string());
                }
            }
            for v in &r.violations {
                let _ = writeln!(out, "violation: {v}");
            }
            for w in &r.warnings {
                let _ = writeln!(out, "warning: {w}");
            }
        }
    }
    out
}

fn ratfun_json(f: &RationalFunction) -> Value {
    json!({
        "factored": f.to_factored_string(),
        "numerator": f.num().to_string(),
        "denominator": f.den().to_string(),
    })
}

fn root_json(r: &IsolatedRoot) -> Value {
    json!({
        "lower": q(&r.lower),
        "upper": q(&r.upper),
        "multiplicity": r.multiplicity,
        "closed_form": r.closed_form.as_ref().map(ToString::to_string),
    })
}

fn roots_json(roots: &FutRoots) -> Value {
    json!({
        "interval": [q(&roots.report.interval.lower), q(&roots.report.interval.upper)],
        "sturm_count": roots.report.sturm_count,
        "roots": roots.report.roots.iter().map(root_json).collect::<Vec<_>>(),
        "poles": roots.poles.iter().map(|p| json!({
            "location": root_json(&p.location),
            "inside": p.inside,
        })).collect::<Vec<_>>(),
    })
}

fn minkowski_json(m: &MinkowskiOutcome) -> Value {
    match m {
        MinkowskiOutcome::Pass => json!({"outcome": "pass"}),
        MinkowskiOutcome::Fail { normal, sum, whole } => json!({
            "outcome": "fail", "normal": normal, "sum": q(sum), "whole": q(whole),
        }),
        MinkowskiOutcome::Inconclusive { reason } => json!({"outcome": "inconclusive", "reason": reason}),
    }
}

fn structured(output: &Output) -> Value {
    match output {
        Output::Localize(r) => json!({
            "command": "localize",
            "scenario": r.name,
            "m": r.m,
            "parameter": r.var,
            "interval": r.interval.as_ref().map(|i| vec![q(&i.lower), q(&i.upper)]),
            "volumes": r.volumes.iter().map(ratfun_json).collect::<Vec<_>>(),
            "numerators": r.numerators.iter().map(ratfun_json).collect::<Vec<_>>(),
            "fut": ratfun_json(&r.fut),
            "value": r.value.as_ref().map(|(x, v)| json!({"at": q(x), "fut": q(v)})),
            "roots": r.roots.as_ref().map(roots_json),
            "warnings": r.warnings,
            "notes": r.notes,
        }),
        Output::Roots { fut, roots } => json!({
            "command": "roots",
            "fut": ratfun_json(fut),
            "roots": roots_json(roots),
        }),
        Output::Toric(t) => json!({
            "command": "toric",
            "at": q(&t.x),
            "direction": t.direction,
            "polytopes": t.polytopes.iter().map(|p| json!({
                "vertices": p.vertices,
                "facets": p.facets,
                "volume": q(&p.volume),
                "moment": q(&p.moment),
            })).collect::<Vec<_>>(),
            "fut": q(&t.fut),
            "minkowski": t.minkowski.as_ref().map(minkowski_json),
        }),
        Output::Verify(v) => json!({
            "command": "verify",
            "scenario": v.name,
            "direction": v.direction,
            "all_equal": v.record.all_equal(),
            "samples": v.record.samples.iter().map(|s| json!({
                "at": q(&s.x),
                "localized": q(&s.localized),
                "toric": q(&s.toric),
                "equal": s.equal,
                "volumes": s.volumes.iter().map(|vol| json!({
                    "localized": q(&vol.localized),
                    "toric": q(&vol.toric),
                    "equal": vol.equal,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        }),
        Output::Sample(s) => json!({
            "command": "sample",
            "parameter": s.var,
            "points": s.points.iter().map(|p| json!({
                "at": q(&p.x),
                "fut": p.value.as_ref().map(q),
                "pole": p.value.is_none(),
            })).collect::<Vec<_>>(),
        }),
        Output::Validate(r) => json!({
            "command": "validate",
            "valid": r.is_valid(),
            "violations": r.violations,
            "warnings": r.warnings,
            "volumes": r.volumes.iter().map(|v| v.as_ref().map(ratfun_json)).collect::<Vec<_>>(),
        }),
    }
}

fn csv(output: &Output) -> String {
    let mut out = String::from("c,fut\n");
    let mut row = |x: &Rational, v: &Rational| {
        let _ = writeln!(out, "{},{}", q(x), q(v));
    };
    match output {
        Output::Localize(r) => {
            if let Some((x, v)) = &r.value {
                row(x, v);
            }
        }
        Output::Roots { fut, roots } => {
            for r in &roots.report.roots {
                let mid = (&r.lower + &r.upper) * rat(1, 2);
                if let Ok(v) = fut.eval(&mid) {
                    row(&mid, &v);
                }
            }
        }
        Output::Toric(t) => row(&t.x, &t.fut),
        Output::Verify(v) => {
            for s in &v.record.samples {
                row(&s.x, &s.localized);
            }
        }
        Output::Sample(s) => {
            for p in &s.points {
                if let Some(v) = &p.value {
                    row(&p.x, v);
                }
            }
        }
        Output::Validate(_) => {}
    }
    out
}

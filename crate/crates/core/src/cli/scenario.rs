//! JSON scenario files. Rationals are strings (`"-1/2"`), classes are
//! monomial maps in which the key `"1"` holds the equivariant scalar:
//!
//! ```json
//! { "1": "-1/2", "a": "2c-1/2", "b": "2" }
//! ```
//!
//! The ring name `point` is reserved for the cohomology of a point.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{format_rational, parse_rational, ParamPoly, RationalFunction};
use crate::cohomology::{
    parse_monomial_over, ring_create, EquivariantClass, Generator, NilpotentClass, Ring, RingSpec,
};
use crate::localization::{
    validate_scenario, FixedComponent, LocalizationScenario, Parameter, ValidationReport,
};
use crate::toric::{Facet, ParamPolytope};

pub const POINT_RING: &str = "point";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error("invalid scenario: {}", .violations.join("; "))]
    Invalid { violations: Vec<String> },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

fn field_err(field: impl Into<String>, message: impl ToString) -> ScenarioError {
    ScenarioError::Field {
        field: field.into(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    pub name: String,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub citation: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParameter {
    name: String,
    interval: [String; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    name: String,
    order: u32,
    degree: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRing {
    name: String,
    generators: Vec<RawGenerator>,
    top: String,
    dim: u32,
}

type RawClass = BTreeMap<String, String>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    label: String,
    ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    codimension: Option<u32>,
    euler: RawClass,
    classes: Vec<RawClass>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFacet {
    normal: Vec<i64>,
    offset: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolytope {
    facets: Vec<RawFacet>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawToric {
    dim: usize,
    direction: Vec<i64>,
    polytopes: Vec<RawPolytope>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    anticanonical: Option<RawPolytope>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    metadata: Metadata,
    m: u32,
    k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    parameter: Option<RawParameter>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    rings: Vec<RawRing>,
    components: Vec<RawComponent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    toric: Option<RawToric>,
}

/// Polytope data attached to a scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricBlock {
    pub dim: usize,
    /// Moment direction `ξ`.
    pub direction: Vec<i64>,
    /// One polytope per bundle.
    pub polytopes: Vec<ParamPolytope>,
    /// Polytope of the anticanonical bundle, for the Minkowski check.
    pub anticanonical: Option<ParamPolytope>,
}

/// A parsed and validated scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioFile {
    pub metadata: Metadata,
    pub scenario: LocalizationScenario,
    pub toric: Option<ToricBlock>,
    /// Named rings in declaration order.
    pub rings: Vec<(String, Ring)>,
    /// Ring name of each component.
    pub component_rings: Vec<String>,
    pub report: ValidationReport,
}

pub fn parse_scenario(text: &str) -> Result<ScenarioFile, ScenarioError> {
    let raw: RawScenario = serde_json::from_str(text).map_err(|e| ScenarioError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let file = build(raw)?;
    if !file.report.is_valid() {
        return Err(ScenarioError::Invalid {
            violations: file.report.violations.clone(),
        });
    }
    Ok(file)
}

pub fn load_scenario(path: &Path) -> Result<ScenarioFile, ScenarioError> {
    let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_scenario(&text)
}

fn build(raw: RawScenario) -> Result<ScenarioFile, ScenarioError> {
    let parameter = match &raw.parameter {
        None => None,
        Some(p) => {
            if p.name.is_empty() || !p.name.chars().all(char::is_alphabetic) {
                return Err(field_err("parameter.name", "must be alphabetic"));
            }
            let lower = parse_rational(&p.interval[0]).map_err(|e| field_err("parameter.interval[0]", e))?;
            let upper = parse_rational(&p.interval[1]).map_err(|e| field_err("parameter.interval[1]", e))?;
            if lower >= upper {
                return Err(field_err(
                    "parameter.interval",
                    format!("validity interval ({}, {}) is empty", p.interval[0], p.interval[1]),
                ));
            }
            Some(Parameter {
                name: p.name.clone(),
                lower,
                upper,
            })
        }
    };
    let var = parameter.as_ref().map_or("c".to_string(), |p| p.name.clone());

    let mut rings: Vec<(String, Ring)> = Vec::new();
    for (i, r) in raw.rings.iter().enumerate() {
        let at = format!("rings[{i}]");
        if r.name == POINT_RING || rings.iter().any(|(n, _)| *n == r.name) {
            return Err(field_err(format!("{at}.name"), format!("ring name `{}` is reserved or repeated", r.name)));
        }
        let generators: Vec<Generator> = r
            .generators
            .iter()
            .map(|g| Generator::new(g.name.clone(), g.order, g.degree))
            .collect();
        let top = parse_monomial_over(&generators, &r.top).map_err(|e| field_err(format!("{at}.top"), e))?;
        let ring = ring_create(generators, top, r.dim).map_err(|e| field_err(&at, e))?;
        rings.push((r.name.clone(), ring));
    }
    let lookup = |name: &str| -> Option<Ring> {
        if name == POINT_RING {
            return Some(RingSpec::point());
        }
        rings.iter().find(|(n, _)| n == name).map(|(_, r)| r.clone())
    };

    let mut components = Vec::new();
    let mut component_rings = Vec::new();
    for (i, c) in raw.components.iter().enumerate() {
        let at = format!("components[{i}]");
        let ring = lookup(&c.ring).ok_or_else(|| field_err(format!("{at}.ring"), format!("unknown ring `{}`", c.ring)))?;
        let euler = parse_class(&c.euler, &ring, &var, &format!("{at}.euler"))?;
        let classes = c
            .classes
            .iter()
            .enumerate()
            .map(|(j, cl)| parse_class(cl, &ring, &var, &format!("{at}.classes[{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        components.push(FixedComponent {
            label: c.label.clone(),
            ring,
            euler,
            classes,
            codimension: c.codimension,
        });
        component_rings.push(c.ring.clone());
    }
    let scenario = LocalizationScenario {
        m: raw.m,
        k: raw.k,
        parameter,
        components,
    };

    let toric = match &raw.toric {
        None => None,
        Some(t) => Some(parse_toric(t, &var, raw.k)?),
    };
    let report = validate_scenario(&scenario);
    Ok(ScenarioFile {
        metadata: raw.metadata,
        scenario,
        toric,
        rings,
        component_rings,
        report,
    })
}

fn parse_poly(text: &str, var: &str, field: &str) -> Result<ParamPoly, ScenarioError> {
    ParamPoly::parse(text, var).map_err(|e| field_err(field, e))
}

fn parse_class(raw: &RawClass, ring: &Ring, var: &str, field: &str) -> Result<EquivariantClass, ScenarioError> {
    let mut scalar = RationalFunction::zero(var);
    let mut terms = Vec::new();
    for (key, value) in raw {
        let at = format!("{field}.{key}");
        let coeff = RationalFunction::from_poly(parse_poly(value, var, &at)?);
        let mono = ring.parse_monomial(key).map_err(|e| field_err(&at, e))?;
        if mono.iter().all(|e| *e == 0) {
            scalar = coeff;
        } else {
            terms.push((mono, coeff));
        }
    }
    let nilpotent = NilpotentClass::from_terms(ring, var, terms).map_err(|e| field_err(field, e))?;
    Ok(EquivariantClass::new(scalar, nilpotent))
}

fn parse_polytope(raw: &RawPolytope, dim: usize, var: &str, field: &str) -> Result<ParamPolytope, ScenarioError> {
    let facets = raw
        .facets
        .iter()
        .enumerate()
        .map(|(i, f)| {
            Ok(Facet {
                normal: f.normal.clone(),
                offset: parse_poly(&f.offset, var, &format!("{field}.facets[{i}].offset"))?,
            })
        })
        .collect::<Result<Vec<_>, ScenarioError>>()?;
    ParamPolytope::new(dim, facets).map_err(|e| field_err(field, e))
}

fn parse_toric(t: &RawToric, var: &str, k: usize) -> Result<ToricBlock, ScenarioError> {
    if t.direction.len() != t.dim {
        return Err(field_err(
            "toric.direction",
            format!("has length {}, expected {}", t.direction.len(), t.dim),
        ));
    }
    if t.polytopes.len() != k {
        return Err(field_err(
            "toric.polytopes",
            format!("lists {} polytopes, expected {k}", t.polytopes.len()),
        ));
    }
    let polytopes = t
        .polytopes
        .iter()
        .enumerate()
        .map(|(i, p)| parse_polytope(p, t.dim, var, &format!("toric.polytopes[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let anticanonical = t
        .anticanonical
        .as_ref()
        .map(|p| parse_polytope(p, t.dim, var, "toric.anticanonical"))
        .transpose()?;
    Ok(ToricBlock {
        dim: t.dim,
        direction: t.direction.clone(),
        polytopes,
        anticanonical,
    })
}

fn poly_text(f: &RationalFunction) -> String {
    f.num().to_string()
}

fn class_to_raw(x: &EquivariantClass) -> RawClass {
    let mut out = RawClass::new();
    out.insert("1".into(), poly_text(&x.scalar));
    for (mono, coeff) in x.nilpotent.terms() {
        out.insert(x.ring().format_monomial(mono), poly_text(coeff));
    }
    out
}

fn polytope_to_raw(p: &ParamPolytope) -> RawPolytope {
    RawPolytope {
        facets: p
            .facets()
            .iter()
            .map(|f| RawFacet {
                normal: f.normal.clone(),
                offset: f.offset.to_string(),
            })
            .collect(),
    }
}

/// Canonical JSON for a scenario; `parse_scenario` inverts it.
pub fn serialize_scenario(file: &ScenarioFile) -> String {
    let s = &file.scenario;
    let raw = RawScenario {
        metadata: file.metadata.clone(),
        m: s.m,
        k: s.k,
        parameter: s.parameter.as_ref().map(|p| RawParameter {
            name: p.name.clone(),
            interval: [format_rational(&p.lower), format_rational(&p.upper)],
        }),
        rings: file
            .rings
            .iter()
            .map(|(name, ring)| RawRing {
                name: name.clone(),
                generators: ring
                    .generators()
                    .iter()
                    .map(|g| RawGenerator {
                        name: g.name.clone(),
                        order: g.order,
                        degree: g.degree,
                    })
                    .collect(),
                top: ring.format_monomial(ring.top()),
                dim: ring.dim(),
            })
            .collect(),
        components: s
            .components
            .iter()
            .zip(&file.component_rings)
            .map(|(c, ring)| RawComponent {
                label: c.label.clone(),
                ring: ring.clone(),
                codimension: c.codimension,
                euler: class_to_raw(&c.euler),
                classes: c.classes.iter().map(class_to_raw).collect(),
            })
            .collect(),
        toric: file.toric.as_ref().map(|t| RawToric {
            dim: t.dim,
            direction: t.direction.clone(),
            polytopes: t.polytopes.iter().map(polytope_to_raw).collect(),
            anticanonical: t.anticanonical.as_ref().map(polytope_to_raw),
        }),
    };
    serde_json::to_string_pretty(&raw).expect("scenario serializes")
}

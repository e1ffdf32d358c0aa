//! Residue engine: evaluates the coupled Futaki character as a sum over
//! fixed components of equivariant integrals divided by the equivariant
//! Euler class of the normal bundle.
//!
//! For bundle `α` the engine forms
//!
//! ```text
//! N_α = Σ_λ ∫_{Z_λ} (u_α + c_1(L_α))^{m+1} / e(ν_λ)
//! V_α = Σ_λ ∫_{Z_λ} (u_α + c_1(L_α))^m     / e(ν_λ)
//! ```
//!
//! and returns `Fut = 1/(m+1) Σ_α N_α / V_α`. Classes are in Chern
//! normalization; all `2π` factors cancel in the ratio.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::analysis::roots::{sturm_count, OpenInterval};
use crate::arith::{sign_of, ArithError, Rational, RationalFunction};
use crate::cohomology::{
    equiv_pow, integrate, invert_unit, CohomologyError, EquivariantClass, Ring,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalizationError {
    #[error("degenerate fixed-point datum at component {component}")]
    Degenerate { component: String },
    #[error("inconsistent residue data for bundle {alpha}: volume {volume} is not a polynomial")]
    InconsistentResidueData { alpha: usize, volume: String },
    #[error("localized volume of bundle {alpha} vanishes identically")]
    ZeroVolume { alpha: usize },
    #[error("bundle index {alpha} out of range (k = {k})")]
    BundleIndex { alpha: usize, k: usize },
    #[error("component {component}: {source}")]
    Cohomology {
        component: String,
        source: CohomologyError,
    },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// The formal parameter and its open validity (ampleness) interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parameter {
    pub name: String,
    pub lower: Rational,
    pub upper: Rational,
}

impl Parameter {
    pub fn interval(&self) -> OpenInterval {
        OpenInterval::new(self.lower.clone(), self.upper.clone())
    }
}

/// Fixed-point component `Z_λ` with its normal-bundle Euler class (shared by
/// all bundles) and, per bundle, `u_α|Z + c_1(L_α)|Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedComponent {
    pub label: String,
    pub ring: Ring,
    pub euler: EquivariantClass,
    pub classes: Vec<EquivariantClass>,
    /// Rank of the normal bundle, when the scenario declares it.
    pub codimension: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizationScenario {
    /// Complex dimension of the manifold.
    pub m: u32,
    /// Number of line bundles in the anticanonical splitting.
    pub k: usize,
    pub parameter: Option<Parameter>,
    pub components: Vec<FixedComponent>,
}

/// Per-point data for a vector field with isolated zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatedPoint {
    /// `u_α(p)` for each bundle.
    pub hamiltonians: Vec<RationalFunction>,
    /// `det(∇X)(p)`.
    pub det: RationalFunction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatedPointData {
    pub k: usize,
    pub points: Vec<IsolatedPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    /// Hard invariant violations; the scenario is unusable if any are present.
    pub violations: Vec<String>,
    /// Consistency diagnostics that do not block evaluation.
    pub warnings: Vec<String>,
    /// Localized volume per bundle, when computable.
    pub volumes: Vec<Option<RationalFunction>>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl LocalizationScenario {
    /// Name of the formal parameter (`c` when the scenario has none).
    pub fn var(&self) -> &str {
        self.parameter.as_ref().map_or("c", |p| p.name.as_str())
    }

    /// Sum over components of `component_integral(·, alpha, power)`.
    pub fn residue_sum(&self, alpha: usize, power: u32) -> Result<RationalFunction, LocalizationError> {
        self.check_alpha(alpha)?;
        let mut total = RationalFunction::zero(self.var());
        for comp in &self.components {
            total = &total + &component_integral(comp, alpha, power)?;
        }
        Ok(total)
    }

    fn check_alpha(&self, alpha: usize) -> Result<(), LocalizationError> {
        if alpha >= self.k {
            return Err(LocalizationError::BundleIndex { alpha, k: self.k });
        }
        Ok(())
    }

    /// Adds `shifts[α]` to every component's α-th Hamiltonian scalar.
    pub fn shift_hamiltonians(&self, shifts: &[Rational]) -> Self {
        let mut out = self.clone();
        for comp in &mut out.components {
            for (class, shift) in comp.classes.iter_mut().zip(shifts) {
                *class = class.shift_scalar(shift);
            }
        }
        out
    }

    /// The isolated-point view, when every component is a point.
    pub fn to_isolated(&self) -> Option<IsolatedPointData> {
        if !self.components.iter().all(|c| c.ring.is_point()) {
            return None;
        }
        Some(IsolatedPointData {
            k: self.k,
            points: self
                .components
                .iter()
                .map(|c| IsolatedPoint {
                    hamiltonians: c.classes.iter().map(|x| x.scalar.clone()).collect(),
                    det: c.euler.scalar.clone(),
                })
                .collect(),
        })
    }
}

/// `∫_Z (classes[α])^power / euler`.
pub fn component_integral(
    comp: &FixedComponent,
    alpha: usize,
    power: u32,
) -> Result<RationalFunction, LocalizationError> {
    let class = comp.classes.get(alpha).ok_or(LocalizationError::BundleIndex {
        alpha,
        k: comp.classes.len(),
    })?;
    let wrap = |source: CohomologyError| match source {
        CohomologyError::DegenerateFixedPoint => LocalizationError::Degenerate {
            component: comp.label.clone(),
        },
        source => LocalizationError::Cohomology {
            component: comp.label.clone(),
            source,
        },
    };
    let inverse = invert_unit(&comp.euler).map_err(wrap)?;
    let integrand = equiv_pow(class, power).mul(&inverse).map_err(wrap)?;
    Ok(integrate(&integrand))
}

/// Localized `∫_M c_1(L_α)^m`; a genuine manifold always yields a polynomial.
pub fn volume_localized(
    s: &LocalizationScenario,
    alpha: usize,
) -> Result<RationalFunction, LocalizationError> {
    let volume = s.residue_sum(alpha, s.m)?;
    if !volume.is_polynomial() {
        return Err(LocalizationError::InconsistentResidueData {
            alpha,
            volume: volume.to_factored_string(),
        });
    }
    Ok(volume)
}

/// `1/(m+1) Σ_α N_α / V_α` in canonical form.
pub fn fut_localized(s: &LocalizationScenario) -> Result<RationalFunction, LocalizationError> {
    let mut total = RationalFunction::zero(s.var());
    for alpha in 0..s.k {
        let volume = volume_localized(s, alpha)?;
        if volume.is_zero() {
            return Err(LocalizationError::ZeroVolume { alpha });
        }
        let numerator = s.residue_sum(alpha, s.m + 1)?;
        total = &total + &numerator.checked_div(&volume)?;
    }
    Ok(total.scale(&prefactor(s.m)))
}

fn prefactor(m: u32) -> Rational {
    Rational::one() / Rational::from_integer((m + 1).into())
}

/// Isolated-zero form: `1/(m+1) Σ_α [Σ_p u_α(p)^{m+1}/det_p] / [Σ_p u_α(p)^m/det_p]`.
pub fn fut_isolated(d: &IsolatedPointData, m: u32) -> Result<RationalFunction, LocalizationError> {
    let var = d
        .points
        .first()
        .map_or("c".to_string(), |p| p.det.var().to_string());
    for (i, point) in d.points.iter().enumerate() {
        if point.det.is_zero() {
            return Err(LocalizationError::Degenerate {
                component: format!("point {i}"),
            });
        }
    }
    let mut total = RationalFunction::zero(var.clone());
    for alpha in 0..d.k {
        let mut num = RationalFunction::zero(var.clone());
        let mut den = RationalFunction::zero(var.clone());
        for point in &d.points {
            let u = point
                .hamiltonians
                .get(alpha)
                .ok_or(LocalizationError::BundleIndex { alpha, k: d.k })?;
            num = &num + &u.pow(m + 1).checked_div(&point.det)?;
            den = &den + &u.pow(m).checked_div(&point.det)?;
        }
        if den.is_zero() {
            return Err(LocalizationError::ZeroVolume { alpha });
        }
        total = &total + &num.checked_div(&den)?;
    }
    Ok(total.scale(&prefactor(m)))
}

/// Checks every structural invariant and the localized volumes.
pub fn validate_scenario(s: &LocalizationScenario) -> ValidationReport {
    let mut report = ValidationReport::default();
    let v = &mut report.violations;
    if s.m < 1 {
        v.push("manifold dimension must be at least 1".into());
    }
    if s.k < 1 {
        v.push("at least one bundle is required".into());
    }
    if s.components.is_empty() {
        v.push("at least one fixed component is required".into());
    }
    if let Some(p) = &s.parameter {
        if p.lower >= p.upper {
            v.push(format!(
                "validity interval ({}, {}) is empty",
                p.lower, p.upper
            ));
        }
    }
    for comp in &s.components {
        let label = &comp.label;
        if comp.euler.scalar.is_zero() {
            v.push(format!("degenerate fixed-point datum: euler scalar is zero at component {label}"));
        }
        if comp.classes.len() != s.k {
            v.push(format!(
                "component {label} lists {} classes, expected {}",
                comp.classes.len(),
                s.k
            ));
        }
        if comp.ring.dim() > s.m {
            v.push(format!(
                "component {label} has dimension {} > {}",
                comp.ring.dim(),
                s.m
            ));
        }
        if let Some(codim) = comp.codimension {
            if comp.ring.dim() + codim != s.m {
                v.push(format!(
                    "component {label}: dimension {} + codimension {codim} != {}",
                    comp.ring.dim(),
                    s.m
                ));
            }
        }
        let same_ring = |x: &EquivariantClass| **x.ring() == *comp.ring;
        if !same_ring(&comp.euler) || !comp.classes.iter().all(same_ring) {
            v.push(format!("component {label}: classes are not over the component ring"));
        }
    }
    if !report.violations.is_empty() {
        return report;
    }

    for alpha in 0..s.k {
        match volume_localized(s, alpha) {
            Ok(volume) => {
                if !volume_is_positive(&volume, s.parameter.as_ref()) {
                    report.violations.push(format!(
                        "volume of bundle {} is not positive on the validity interval: {}",
                        alpha + 1,
                        volume.to_factored_string()
                    ));
                }
                report.volumes.push(Some(volume));
            }
            Err(err) => {
                report.violations.push(err.to_string());
                report.volumes.push(None);
            }
        }
        for power in 1..s.m {
            if let Ok(sum) = s.residue_sum(alpha, power) {
                if !sum.is_zero() {
                    report.warnings.push(format!(
                        "bundle {}: residue sum in degree {power} is {} but must vanish below degree {}",
                        alpha + 1,
                        sum.to_factored_string(),
                        s.m
                    ));
                }
            }
        }
    }
    report
}

fn volume_is_positive(volume: &RationalFunction, parameter: Option<&Parameter>) -> bool {
    match parameter {
        None => volume
            .as_constant()
            .is_some_and(|x| sign_of(&x) > 0),
        Some(p) => {
            let interval = p.interval();
            let mid = interval.midpoint();
            let positive_mid = volume.eval(&mid).is_ok_and(|x| sign_of(&x) > 0);
            positive_mid && sturm_count(volume.num(), &interval) == 0
        }
    }
}

impl FixedComponent {
    /// Normal-bundle weight (the Euler class scalar).
    pub fn weight(&self) -> &RationalFunction {
        &self.euler.scalar
    }
}

impl Default for Parameter {
    fn default() -> Self {
        Self {
            name: "c".into(),
            lower: Rational::zero(),
            upper: Rational::one(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, ParamPoly};
    use crate::cohomology::{ring_create, Generator, NilpotentClass, RingSpec};

    fn rf(text: &str) -> RationalFunction {
        RationalFunction::from_poly(ParamPoly::parse(text, "c").unwrap())
    }

    fn class(ring: &Ring, scalar: &str, terms: &[(&str, &str)]) -> EquivariantClass {
        let nil = NilpotentClass::from_terms(
            ring,
            "c",
            terms
                .iter()
                .map(|(m, c)| (ring.parse_monomial(m).unwrap(), rf(c))),
        )
        .unwrap();
        EquivariantClass::new(rf(scalar), nil)
    }

    pub(crate) fn section3(weight: &str) -> LocalizationScenario {
        let ring = ring_create(
            vec![Generator::new("a", 2, 2), Generator::new("b", 3, 2)],
            vec![1, 2],
            3,
        )
        .unwrap();
        let neg_weight = format!("-{weight}");
        let z_inf = FixedComponent {
            label: "Z_inf".into(),
            ring: ring.clone(),
            euler: class(&ring, &neg_weight, &[("a", "-1"), ("b", "1")]),
            classes: vec![
                class(&ring, "-1/2", &[("a", "2c-1/2"), ("b", "2")]),
                class(&ring, "-1/2", &[("a", "3/2-2c"), ("b", "2")]),
            ],
            codimension: Some(1),
        };
        let z_0 = FixedComponent {
            label: "Z_0".into(),
            ring: ring.clone(),
            euler: class(&ring, weight, &[("a", "1"), ("b", "-1")]),
            classes: vec![
                class(&ring, "1/2", &[("a", "2c+1/2"), ("b", "1")]),
                class(&ring, "1/2", &[("a", "5/2-2c"), ("b", "1")]),
            ],
            codimension: Some(1),
        };
        LocalizationScenario {
            m: 4,
            k: 2,
            parameter: Some(Parameter {
                name: "c".into(),
                lower: rat(1, 4),
                upper: rat(3, 4),
            }),
            components: vec![z_inf, z_0],
        }
    }

    fn cp1() -> LocalizationScenario {
        let pt = RingSpec::point();
        let point = |label: &str, u: &str, det: &str| FixedComponent {
            label: label.into(),
            ring: pt.clone(),
            euler: EquivariantClass::scalar_only(&pt, rf(det)),
            classes: vec![EquivariantClass::scalar_only(&pt, rf(u))],
            codimension: Some(1),
        };
        LocalizationScenario {
            m: 1,
            k: 1,
            parameter: None,
            components: vec![point("south", "-1", "-1"), point("north", "1", "1")],
        }
    }

    #[test]
    fn section3_volumes_and_numerators() {
        let s = section3("1/2");
        assert_eq!(volume_localized(&s, 0).unwrap(), rf("112c-6"));
        assert_eq!(volume_localized(&s, 1).unwrap(), rf("106-112c"));
        assert_eq!(s.residue_sum(0, 5).unwrap(), rf("-30c+12"));
        assert_eq!(s.residue_sum(1, 5).unwrap(), rf("30c-18"));
    }

    #[test]
    fn section3_fut() {
        let fut = fut_localized(&section3("1/2")).unwrap();
        assert_eq!(
            fut.to_factored_string(),
            "-3(112c^2-112c+23)/((56c-3)(56c-53))"
        );
        assert_eq!(fut.eval(&rat(1, 2)).unwrap(), rat(-3, 125));
    }

    #[test]
    fn unit_weight_variant_is_consistent() {
        let s = section3("1");
        assert_eq!(volume_localized(&s, 0).unwrap(), rf("56c-3"));
        assert_eq!(s.residue_sum(0, 5).unwrap(), rf("-30c+12"));
        let report = validate_scenario(&s);
        assert!(report.is_valid() && report.warnings.is_empty(), "{report:?}");
        assert_eq!(s.residue_sum(0, 0).unwrap(), rf("0"));
    }

    #[test]
    fn zero_power_point_integral() {
        let pt = RingSpec::point();
        let comp = FixedComponent {
            label: "p".into(),
            ring: pt.clone(),
            euler: EquivariantClass::scalar_only(&pt, rf("3")),
            classes: vec![EquivariantClass::scalar_only(&pt, rf("5"))],
            codimension: None,
        };
        assert_eq!(component_integral(&comp, 0, 0).unwrap(), rf("1/3"));
    }

    #[test]
    fn cp1_sanity() {
        let s = cp1();
        assert_eq!(volume_localized(&s, 0).unwrap(), rf("2"));
        assert!(fut_localized(&s).unwrap().is_zero());
        let iso = s.to_isolated().unwrap();
        assert!(fut_isolated(&iso, 1).unwrap().is_zero());
    }

    #[test]
    fn isolated_two_point_formula() {
        // (p1 + p2)/2 for (u, det) = (p1, 1), (p2, -1) with p1 = 3, p2 = 1/2
        let point = |u: &str, det: &str| IsolatedPoint {
            hamiltonians: vec![rf(u)],
            det: rf(det),
        };
        let d = IsolatedPointData {
            k: 1,
            points: vec![point("3", "1"), point("1/2", "-1")],
        };
        assert_eq!(fut_isolated(&d, 1).unwrap(), rf("7/4"));
        let zero = IsolatedPointData {
            k: 1,
            points: vec![point("0", "2")],
        };
        assert_eq!(
            fut_isolated(&zero, 1),
            Err(LocalizationError::ZeroVolume { alpha: 0 })
        );
    }

    #[test]
    fn validation_flags_degeneracy() {
        let mut s = section3("1/2");
        s.components[0].euler.scalar = rf("0");
        let report = validate_scenario(&s);
        assert!(!report.is_valid());
        assert!(report.violations[0].contains("degenerate fixed-point datum"));
        assert!(matches!(
            fut_localized(&s),
            Err(LocalizationError::Degenerate { .. })
        ));
    }

    #[test]
    fn validation_of_section3() {
        let report = validate_scenario(&section3("1/2"));
        assert!(report.is_valid(), "{report:?}");
        assert_eq!(report.volumes, vec![Some(rf("112c-6")), Some(rf("106-112c"))]);
        // the half-weight data do not integrate to zero in low degree
        assert!(report.warnings.iter().any(|w| w.contains("degree 1 is -24")));
    }

    #[test]
    fn parameter_dependent_weight_yields_rational_volume() {
        let mut s = section3("1");
        s.components[1].euler.scalar = rf("c");
        let report = validate_scenario(&s);
        assert!(report
            .violations
            .iter()
            .any(|v| v.contains("inconsistent residue data")));
    }

    #[test]
    fn shifts() {
        let s = section3("1");
        let base = fut_localized(&s).unwrap();
        let zero_sum = s.shift_hamiltonians(&[rat(1, 3), rat(-1, 3)]);
        assert_eq!(fut_localized(&zero_sum).unwrap(), base);
        let shifted = s.shift_hamiltonians(&[rat(1, 3), int(1)]);
        let expected = &base + &RationalFunction::constant(rat(4, 3), "c");
        assert_eq!(fut_localized(&shifted).unwrap(), expected);
        // the half-weight data are not shift invariant
        let paper = section3("1/2");
        let moved = paper.shift_hamiltonians(&[rat(1, 3), rat(-1, 3)]);
        assert_ne!(fut_localized(&moved).unwrap(), fut_localized(&paper).unwrap());
    }
}

mod common;

use common::*;
use futaki_core::analysis::validate::cross_validate;
use futaki_core::arith::{factorial, int, rat, RationalFunction};
use futaki_core::cli::catalog::catalog_source;
use futaki_core::cli::{catalog_names, parse_scenario, serialize_scenario, ScenarioError};
use futaki_core::localization::{fut_localized, volume_localized};
use futaki_core::toric::{
    linear_moment, minkowski_check, realize, volume, volume_polynomial, MinkowskiOutcome,
};

#[test]
fn every_entry_loads_validates_and_round_trips() {
    for name in catalog_names() {
        let file = catalog(name);
        assert!(file.report.is_valid(), "{name}: {:?}", file.report.violations);
        assert_eq!(file.metadata.name, name);
        let text = serialize_scenario(&file);
        let again = parse_scenario(&text).unwrap();
        assert_eq!(again, file, "{name}");
        assert_eq!(serialize_scenario(&again), text, "{name}");
    }
}

#[test]
fn polytopes_are_bounded_and_irredundant_at_midpoint() {
    for name in catalog_names() {
        let file = catalog(name);
        let toric = file.toric.as_ref().unwrap();
        let x = file
            .scenario
            .parameter
            .as_ref()
            .map_or(rat(0, 1), |p| p.interval().midpoint());
        for p in toric.polytopes.iter().chain(&toric.anticanonical) {
            p.check_at(&x).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        let whole = toric.anticanonical.as_ref().unwrap();
        assert!(minkowski_check(&toric.polytopes, whole, &x).unwrap().is_pass(), "{name}");
    }
}

#[test]
fn consistent_entries_cross_validate() {
    for name in ["cp1", "cp1-coupled", "hultgren-c-unit-weight"] {
        let file = catalog(name);
        let toric = file.toric.unwrap();
        let record = cross_validate(&file.scenario, &toric.polytopes, &toric.direction, &samples()).unwrap();
        assert!(record.all_equal(), "{name}: {:?}", record.first_mismatch());
    }
}

#[test]
fn half_weight_data_disagree_by_factor_two() {
    let file = catalog("hultgren-c");
    let toric = file.toric.unwrap();
    let record = cross_validate(&file.scenario, &toric.polytopes, &toric.direction, &samples()).unwrap();
    for s in &record.samples {
        assert_eq!(s.toric, &s.localized * int(2));
        for v in &s.volumes {
            assert_eq!(v.localized, &v.toric * int(2));
        }
    }
}

#[test]
fn hultgren_polytope_geometry() {
    let toric = catalog("hultgren-c").toric.unwrap();
    let q = realize(&toric.polytopes[0], &rat(1, 2)).unwrap();
    assert_eq!(q.facet_count(), 7);
    assert_eq!(volume(&q), rat(25, 24));
    let e4 = futaki_core::toric::direction(&[0, 0, 0, 1]);
    assert_eq!(linear_moment(&q, &e4).unwrap(), rat(-1, 40));
    let vol = volume_polynomial(&toric.polytopes[0], &samples(), "c").unwrap();
    assert_eq!(vol, poly("56c-3").scale(&rat(1, 24)));
    let unit = volume_localized(&catalog("hultgren-c-unit-weight").scenario, 0).unwrap();
    assert_eq!(RationalFunction::from_poly(vol).scale(&factorial(4)), unit);
}

#[test]
fn corrupt_entry_stays_polynomial_but_mismatches() {
    let file = catalog("hultgren-c-corrupt");
    assert!(volume_localized(&file.scenario, 0).unwrap().is_polynomial());
    assert!(!file.report.warnings.is_empty());
    let toric = file.toric.unwrap();
    let record = cross_validate(&file.scenario, &toric.polytopes, &toric.direction, &samples()).unwrap();
    assert!(!record.all_equal());
}

#[test]
fn hultgren_parses_to_expected_shape() {
    let s = catalog("hultgren-c").scenario;
    assert_eq!((s.m, s.k), (4, 2));
    let p = s.parameter.as_ref().unwrap();
    assert_eq!((p.lower.clone(), p.upper.clone()), (rat(1, 4), rat(3, 4)));
    assert_eq!(fut_localized(&s).unwrap().eval(&rat(1, 2)).unwrap(), rat(-3, 125));
}

fn edited(from: &str, to: &str) -> String {
    let text = catalog_source("hultgren-c").unwrap();
    assert!(text.contains(from), "pattern {from} not found");
    text.replacen(from, to, 1)
}

#[test]
fn semantic_errors_name_the_problem() {
    let one_class = edited(
        r#""classes": [
        {
          "1": "1/2",
          "a": "2c+1/2",
          "b": "1"
        },"#,
        r#""classes": ["#,
    );
    let err = parse_scenario(&one_class).unwrap_err();
    assert!(matches!(err, ScenarioError::Invalid { .. }), "{err}");
    assert!(err.to_string().contains("component Z_0 lists 1 classes, expected 2"), "{err}");

    let reversed = edited(r#""1/4",
      "3/4""#, r#""3/4",
      "1/4""#);
    let err = parse_scenario(&reversed).unwrap_err();
    assert!(err.to_string().contains("parameter.interval"), "{err}");

    let degenerate = edited(r#""euler": {
        "1": "-1/2""#, r#""euler": {
        "1": "0""#);
    let err = parse_scenario(&degenerate).unwrap_err();
    assert!(err.to_string().contains("euler scalar is zero at component Z_inf"), "{err}");

    let bad_monomial = edited(r#""a": "2c-1/2""#, r#""q": "2c-1/2""#);
    let err = parse_scenario(&bad_monomial).unwrap_err();
    assert!(err.to_string().starts_with("components[0].classes[0].q"), "{err}");

    let bad_coefficient = edited(r#""2c-1/2""#, r#""2x-1/2""#);
    assert!(matches!(
        parse_scenario(&bad_coefficient),
        Err(ScenarioError::Field { .. })
    ));
}

#[test]
fn minkowski_detects_wrong_whole() {
    let toric = catalog("hultgren-c").toric.unwrap();
    let outcome = minkowski_check(&toric.polytopes[..1], toric.anticanonical.as_ref().unwrap(), &rat(3, 8)).unwrap();
    assert!(matches!(outcome, MinkowskiOutcome::Fail { .. }));
}

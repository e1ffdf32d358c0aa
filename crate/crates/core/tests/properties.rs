mod common;

use common::*;
use futaki_core::analysis::roots::{fut_roots, isolate_roots, sturm_count, OpenInterval};
use futaki_core::arith::{int, rat, ratfun_reduce, ParamPoly, Rational, RationalFunction};
use futaki_core::cohomology::{equiv_pow, integrate, invert_unit, EquivariantClass, RingSpec};
use futaki_core::localization::{
    fut_isolated, fut_localized, FixedComponent, LocalizationScenario,
};
use futaki_core::toric::{direction, realize, volume_and_moment, Apex};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn poly_strategy() -> impl Strategy<Value = ParamPoly> {
    proptest::collection::vec(small_rational(), 0..5).prop_map(|c| ParamPoly::new(c, "c"))
}

fn nonzero_poly() -> impl Strategy<Value = ParamPoly> {
    poly_strategy().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfun() -> impl Strategy<Value = RationalFunction> {
    (poly_strategy(), nonzero_poly()).prop_map(|(n, d)| ratfun_reduce(&n, &d).unwrap())
}

/// Isolated-point scenario with `k` bundles on `n` points; weights nonzero.
fn point_scenario() -> impl Strategy<Value = LocalizationScenario> {
    (1usize..=2, 2usize..=4, 1u32..=3).prop_flat_map(|(k, n, m)| {
        proptest::collection::vec(
            (nonzero_rational(), proptest::collection::vec(small_rational(), k)),
            n,
        )
        .prop_map(move |points| {
            let ring = RingSpec::point();
            let components = points
                .into_iter()
                .enumerate()
                .map(|(i, (det, us))| FixedComponent {
                    label: format!("p{i}"),
                    ring: ring.clone(),
                    euler: EquivariantClass::scalar_only(&ring, RationalFunction::constant(det, "c")),
                    classes: us
                        .into_iter()
                        .map(|u| EquivariantClass::scalar_only(&ring, RationalFunction::constant(u, "c")))
                        .collect(),
                    codimension: None,
                })
                .collect();
            LocalizationScenario {
                m,
                k,
                parameter: None,
                components,
            }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn poly_ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, ParamPoly::zero("c"));
    }

    #[test]
    fn division_identity(a in poly_strategy(), b in nonzero_poly()) {
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn gcd_divides_both(a in nonzero_poly(), b in nonzero_poly(), g in nonzero_poly()) {
        let x = &a * &g;
        let y = &b * &g;
        let d = futaki_core::arith::poly_gcd(&x, &y).unwrap();
        prop_assert!(x.div_rem(&d).1.is_zero());
        prop_assert!(y.div_rem(&d).1.is_zero());
        prop_assert!(g.degree() <= d.degree());
        prop_assert!(d.leading().is_one());
    }

    #[test]
    fn canonical_form(f in ratfun(), g in ratfun(), x in small_rational()) {
        prop_assert_eq!(ratfun_reduce(f.num(), f.den()).unwrap(), f.clone());
        prop_assert!(f.den().leading().is_one());
        let sum = &f + &g;
        if let (Ok(fx), Ok(gx), Ok(sx)) = (f.eval(&x), g.eval(&x), sum.eval(&x)) {
            prop_assert_eq!(sx, fx + gx);
        }
        let prod = &f * &g;
        if let (Ok(fx), Ok(gx), Ok(px)) = (f.eval(&x), g.eval(&x), prod.eval(&x)) {
            prop_assert_eq!(px, fx * gx);
        }
    }

    #[test]
    fn reduction_is_scale_invariant(n in poly_strategy(), d in nonzero_poly(), k in nonzero_rational()) {
        prop_assert_eq!(
            ratfun_reduce(&n.scale(&k), &d.scale(&k)).unwrap(),
            ratfun_reduce(&n, &d).unwrap()
        );
    }

    #[test]
    fn class_ring_axioms(x in class(), y in class(), z in class()) {
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(
            x.mul(&y.add(&z).unwrap()).unwrap(),
            x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap()
        );
    }

    #[test]
    fn inverse_of_unit(x in unit_class()) {
        let inv = invert_unit(&x).unwrap();
        prop_assert_eq!(x.mul(&inv).unwrap(), EquivariantClass::identity(x.ring(), "c"));
        prop_assert_eq!(invert_unit(&inv).unwrap(), x);
    }

    #[test]
    fn power_additivity(x in class(), p in 0u32..6, q in 0u32..6) {
        prop_assert_eq!(equiv_pow(&x, p + q), equiv_pow(&x, p).mul(&equiv_pow(&x, q)).unwrap());
    }

    #[test]
    fn integrate_is_linear(x in class(), y in class(), k in small_rational()) {
        let k_class = EquivariantClass::scalar_only(x.ring(), RationalFunction::constant(k.clone(), "c"));
        let lhs = integrate(&k_class.mul(&x).unwrap().add(&y).unwrap());
        prop_assert_eq!(lhs, &integrate(&x).scale(&k) + &integrate(&y));
    }

    #[test]
    fn point_scenarios_agree_with_isolated_formula(s in point_scenario()) {
        let iso = s.to_isolated().unwrap();
        match (fut_localized(&s), fut_isolated(&iso, s.m)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "disagreement {:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn consistent_data_are_shift_invariant(t in small_rational(), u in small_rational()) {
        for name in ["hultgren-c-unit-weight", "cp1-coupled"] {
            let s = catalog(name).scenario;
            let base = fut_localized(&s).unwrap();
            prop_assert_eq!(fut_localized(&s.shift_hamiltonians(&[t.clone(), -t.clone()])).unwrap(), base.clone());
            let moved = fut_localized(&s.shift_hamiltonians(&[t.clone(), u.clone()])).unwrap();
            prop_assert_eq!(moved, &base + &RationalFunction::constant(&t + &u, "c"));
        }
    }

    #[test]
    fn triangulation_independence(p in random_polytope(), xi in proptest::collection::vec(-3i64..=3, 3)) {
        let q = realize(&p, &Rational::zero()).unwrap();
        let xi = direction(&xi);
        let base = volume_and_moment(&q, &xi, Apex::Barycenter);
        prop_assert_eq!(volume_and_moment(&q, &xi, Apex::FirstVertex), base.clone());
        prop_assert_eq!(volume_and_moment(&q, &xi, Apex::LastVertex), base);
    }

    #[test]
    fn translation_covariance(
        p in random_polytope(),
        t in proptest::collection::vec(small_rational(), 3),
        xi in proptest::collection::vec(-3i64..=3, 3),
    ) {
        let q = realize(&p, &Rational::zero()).unwrap();
        let xi = direction(&xi);
        let (vol, moment) = volume_and_moment(&q, &xi, Apex::Barycenter);
        let shift: Rational = t.iter().zip(&xi).map(|(a, b)| a * b).sum();
        let (vol_t, moment_t) = volume_and_moment(&q.translate(&t), &xi, Apex::Barycenter);
        prop_assert_eq!(&vol_t, &vol);
        prop_assert_eq!(moment_t, moment + vol * shift);
    }

    #[test]
    fn sturm_certificate(p in root_poly()) {
        let interval = OpenInterval::new(rat(-2, 1) - rat(1, 97), rat(2, 1) + rat(1, 89));
        let report = isolate_roots(&p, &interval, &rat(1, 1000)).unwrap();
        prop_assert_eq!(report.roots.len(), sturm_count(&p, &interval));
        for pair in report.roots.windows(2) {
            prop_assert!(pair[0].upper < pair[1].lower);
        }
        for root in &report.roots {
            prop_assert!(root.width() <= rat(1, 1000));
            if root.multiplicity % 2 == 1 && root.lower < root.upper {
                prop_assert!(p.eval(&root.lower) * p.eval(&root.upper) < Rational::zero());
            }
        }
    }

    #[test]
    fn roots_ignore_positive_scaling(p in root_poly(), k in 1i64..=9) {
        let f = RationalFunction::from_poly(p);
        let interval = OpenInterval::new(rat(-5, 2) - rat(1, 97), rat(5, 2) + rat(1, 89));
        let width = rat(1, 1 << 20);
        let a = fut_roots(&f, &interval, &width).unwrap();
        let b = fut_roots(&f.scale(&int(k)), &interval, &width).unwrap();
        prop_assert_eq!(a.report.roots, b.report.roots);
    }

    #[test]
    fn quadratic_closed_forms(s in 2i64..60, shift in -3i64..=3) {
        // (c - shift)^2 - s
        let p = ParamPoly::new(vec![rat(shift * shift - s, 1), rat(-2 * shift, 1), rat(1, 1)], "c");
        let interval = OpenInterval::new(rat(-20, 1) - rat(1, 7), rat(20, 1) + rat(1, 7));
        let report = isolate_roots(&p, &interval, &rat(1, 1 << 30)).unwrap();
        let perfect = (1..8).any(|r| r * r == s);
        prop_assert_eq!(report.roots.len(), 2);
        for root in &report.roots {
            let cf = root.closed_form.as_ref().unwrap();
            match cf {
                futaki_core::analysis::roots::ClosedForm::Rational(x) => {
                    prop_assert!(perfect);
                    prop_assert!(p.eval(x).is_zero());
                }
                futaki_core::analysis::roots::ClosedForm::Quadratic(q) => {
                    prop_assert!(!perfect);
                    let value = futaki_core::analysis::roots::eval_at_surd(&p, &q.as_surd());
                    prop_assert!(value.is_zero());
                }
            }
        }
    }
}

#![allow(dead_code)]

use futaki_core::arith::{rat, ParamPoly, Rational, RationalFunction};
use futaki_core::cli::{load_catalog, ScenarioFile};
use futaki_core::cohomology::{ring_create, EquivariantClass, Generator, NilpotentClass, Ring};
use futaki_core::toric::{Facet, ParamPolytope};
use proptest::prelude::*;

pub const SAMPLES: [(i64, i64); 5] = [(5, 16), (3, 8), (1, 2), (5, 8), (11, 16)];

pub fn samples() -> Vec<Rational> {
    SAMPLES.iter().map(|&(n, d)| rat(n, d)).collect()
}

pub fn catalog(name: &str) -> ScenarioFile {
    load_catalog(name).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn poly(text: &str) -> ParamPoly {
    ParamPoly::parse(text, "c").unwrap()
}

pub fn rf(text: &str) -> RationalFunction {
    RationalFunction::from_poly(poly(text))
}

/// `Q[a, b]/(a^2, b^3)` with top class `a b^2`.
pub fn p1xp2() -> Ring {
    ring_create(
        vec![Generator::new("a", 2, 2), Generator::new("b", 3, 2)],
        vec![1, 2],
        3,
    )
    .unwrap()
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |x| *x != rat(0, 1))
}

/// Affine polynomial `p + q c`.
pub fn affine() -> impl Strategy<Value = RationalFunction> {
    (small_rational(), small_rational()).prop_map(|(p, q)| {
        RationalFunction::from_poly(ParamPoly::new(vec![p, q], "c"))
    })
}

const LIVE: [&str; 5] = ["a", "b", "ab", "b^2", "ab^2"];

pub fn nilpotent(ring: Ring) -> impl Strategy<Value = NilpotentClass> {
    proptest::collection::vec(affine(), LIVE.len()).prop_map(move |coeffs| {
        let terms = LIVE
            .iter()
            .zip(coeffs)
            .map(|(m, c)| (ring.parse_monomial(m).unwrap(), c));
        NilpotentClass::from_terms(&ring, "c", terms).unwrap()
    })
}

pub fn class() -> impl Strategy<Value = EquivariantClass> {
    (affine(), nilpotent(p1xp2())).prop_map(|(s, n)| EquivariantClass::new(s, n))
}

pub fn unit_class() -> impl Strategy<Value = EquivariantClass> {
    (nonzero_rational(), nilpotent(p1xp2()))
        .prop_map(|(s, n)| EquivariantClass::new(RationalFunction::constant(s, "c"), n))
}

/// A bounded 3-polytope containing the origin: the cube normals, two
/// oblique cuts, and random positive offsets.
pub fn random_polytope() -> impl Strategy<Value = ParamPolytope> {
    let normals: Vec<Vec<i64>> = vec![
        vec![1, 0, 0],
        vec![-1, 0, 0],
        vec![0, 1, 0],
        vec![0, -1, 0],
        vec![0, 0, 1],
        vec![0, 0, -1],
        vec![1, 1, 1],
        vec![-1, 2, 0],
    ];
    proptest::collection::vec((1i64..=8, 1i64..=4), normals.len()).prop_map(move |offs| {
        let facets = normals
            .iter()
            .zip(offs)
            .map(|(n, (p, q))| Facet {
                normal: n.clone(),
                offset: ParamPoly::constant(rat(p, q), "c"),
            })
            .collect();
        ParamPolytope::new(3, facets).unwrap()
    })
}

/// Product of `(c - r)^k` factors times an optional irreducible quadratic.
pub fn root_poly() -> impl Strategy<Value = ParamPoly> {
    (
        proptest::collection::vec(((-8i64..=8, 1i64..=4), 1u32..=2), 1..=3),
        proptest::option::of((1i64..=5, -6i64..=6)),
        nonzero_rational(),
    )
        .prop_map(|(roots, quad, lead)| {
            let mut p = ParamPoly::constant(lead, "c");
            for ((n, d), k) in roots {
                let lin = ParamPoly::new(vec![-rat(n, d), rat(1, 1)], "c");
                p = &p * &lin.pow(k);
            }
            if let Some((a, b)) = quad {
                // c^2 + b c + (b^2 + a): negative discriminant
                let q = ParamPoly::new(vec![rat(b * b + a, 1), rat(b, 1), rat(1, 1)], "c");
                p = &p * &q;
            }
            p
        })
}

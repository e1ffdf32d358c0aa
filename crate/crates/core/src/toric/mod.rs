//! Moment-polytope oracle. Polytopes are given by inequalities
//! `⟨y, normal_i⟩ ≤ offset_i(c)` with integer normals and offsets affine in
//! the parameter; everything downstream of [`realize`] is exact.
//!
//! With classes in Chern normalization, `∫_M c_1(L)^m = m! Vol(P)` and the
//! Hamiltonian moment `∫_M u ω^m / m!` is `∫_P ⟨y, ξ⟩ dy`.

pub mod linalg;

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{factorial, format_rational, sign_of, ArithError, ParamPoly, Rational};
use linalg::{abs_det, affine_dim, dot, kernel_line, rank, solve};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("normal {index} has length {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("offset of facet {index} is not affine in the parameter: {offset}")]
    NonAffineOffset { index: usize, offset: String },
    #[error("polytope is empty at {at}")]
    Empty { at: String },
    #[error("polytope is unbounded at {at}")]
    Unbounded { at: String },
    #[error("polytope is not full-dimensional at {at}")]
    Degenerate { at: String },
    #[error("facet {index} is redundant at {at}")]
    Redundant { index: usize, at: String },
    #[error("moment direction has length {found}, expected {expected}")]
    DirectionLength { expected: usize, found: usize },
    #[error("polytope dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("at least one polytope is required")]
    NoPolytopes,
    #[error("interpolation needs {needed} distinct samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: ParamPoly,
}

/// Half-space description with parameter-affine offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamPolytope {
    dim: usize,
    facets: Vec<Facet>,
}

impl ParamPolytope {
    pub fn new(dim: usize, facets: Vec<Facet>) -> Result<Self, ToricError> {
        for (index, f) in facets.iter().enumerate() {
            if f.normal.len() != dim {
                return Err(ToricError::DimensionMismatch {
                    index,
                    expected: dim,
                    found: f.normal.len(),
                });
            }
            if f.offset.degree().unwrap_or(0) > 1 {
                return Err(ToricError::NonAffineOffset {
                    index,
                    offset: f.offset.to_string(),
                });
            }
        }
        Ok(Self { dim, facets })
    }

    /// Convenience constructor with constant offsets.
    pub fn from_constant(normals: &[Vec<i64>], offsets: &[Rational], var: &str) -> Result<Self, ToricError> {
        let dim = normals.first().map_or(0, Vec::len);
        let facets = normals
            .iter()
            .zip(offsets)
            .map(|(n, o)| Facet {
                normal: n.clone(),
                offset: ParamPoly::constant(o.clone(), var),
            })
            .collect();
        Self::new(dim, facets)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Checks boundedness, full dimension and irredundancy at `x`.
    pub fn check_at(&self, x: &Rational) -> Result<RationalPolytope, ToricError> {
        let q = realize(self, x)?;
        if let Some(index) = q.redundant_facets().first() {
            return Err(ToricError::Redundant {
                index: *index,
                at: format_rational(x),
            });
        }
        Ok(q)
    }
}

/// A realized polytope: vertices with their incident facets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolytope {
    dim: usize,
    normals: Vec<Vec<Rational>>,
    offsets: Vec<Rational>,
    vertices: Vec<Vec<Rational>>,
    incidence: Vec<BTreeSet<usize>>,
}

impl RationalPolytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn offsets(&self) -> &[Rational] {
        &self.offsets
    }

    /// Facets saturated by each vertex.
    pub fn incidence(&self) -> &[BTreeSet<usize>] {
        &self.incidence
    }

    fn facet_vertices(&self, facet: usize) -> BTreeSet<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.incidence[v].contains(&facet))
            .collect()
    }

    /// Inequalities that do not support an `(n−1)`-dimensional face.
    pub fn redundant_facets(&self) -> Vec<usize> {
        (0..self.normals.len())
            .filter(|&f| {
                let verts = self.facet_vertices(f);
                self.face_dim(&verts) != self.dim as isize - 1
            })
            .collect()
    }

    pub fn facet_count(&self) -> usize {
        self.normals.len() - self.redundant_facets().len()
    }

    fn face_dim(&self, verts: &BTreeSet<usize>) -> isize {
        let pts: Vec<&Vec<Rational>> = verts.iter().map(|&v| &self.vertices[v]).collect();
        affine_dim(&pts)
    }

    /// Maximum of `⟨y, w⟩` over the polytope, attained at a vertex.
    pub fn support(&self, w: &[Rational]) -> Rational {
        self.vertices
            .iter()
            .map(|v| dot(v, w))
            .max()
            .expect("non-empty polytope")
    }

    pub fn translate(&self, t: &[Rational]) -> Self {
        let mut out = self.clone();
        for v in &mut out.vertices {
            for (x, s) in v.iter_mut().zip(t) {
                *x += s;
            }
        }
        for (o, n) in out.offsets.iter_mut().zip(&self.normals) {
            *o += dot(n, t);
        }
        out
    }
}

/// Exact vertex enumeration by intersecting every `n`-subset of facets.
pub fn realize(p: &ParamPolytope, x: &Rational) -> Result<RationalPolytope, ToricError> {
    let n = p.dim;
    let at = format_rational(x);
    let normals: Vec<Vec<Rational>> = p
        .facets
        .iter()
        .map(|f| f.normal.iter().map(|&v| Rational::from_integer(v.into())).collect())
        .collect();
    let offsets: Vec<Rational> = p.facets.iter().map(|f| f.offset.eval(x)).collect();
    if n == 0 || rank(&normals) < n {
        return Err(ToricError::Unbounded { at });
    }
    let feasible = |y: &[Rational]| normals.iter().zip(&offsets).all(|(a, b)| dot(a, y) <= *b);

    let mut vertices: Vec<Vec<Rational>> = Vec::new();
    for subset in subsets(normals.len(), n) {
        let a: Vec<Vec<Rational>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let b: Vec<Rational> = subset.iter().map(|&i| offsets[i].clone()).collect();
        if let Some(y) = solve(&a, &b) {
            if feasible(&y) && !vertices.contains(&y) {
                vertices.push(y);
            }
        }
    }
    if vertices.is_empty() {
        return Err(ToricError::Empty { at });
    }
    if has_recession_ray(&normals, n) {
        return Err(ToricError::Unbounded { at });
    }
    vertices.sort();
    let incidence = vertices
        .iter()
        .map(|v| {
            (0..normals.len())
                .filter(|&i| dot(&normals[i], v) == offsets[i])
                .collect()
        })
        .collect();
    let q = RationalPolytope {
        dim: n,
        normals,
        offsets,
        vertices,
        incidence,
    };
    let all: BTreeSet<usize> = (0..q.vertices.len()).collect();
    if q.face_dim(&all) != n as isize {
        return Err(ToricError::Degenerate { at });
    }
    Ok(q)
}

/// Whether `{d : ⟨d, a_i⟩ ≤ 0 ∀i}` contains a nonzero vector. The normals
/// span, so the cone is pointed and is nonzero iff it has an extreme ray.
fn has_recession_ray(normals: &[Vec<Rational>], n: usize) -> bool {
    if n == 1 {
        let pos = normals.iter().any(|a| sign_of(&a[0]) > 0);
        let neg = normals.iter().any(|a| sign_of(&a[0]) < 0);
        return !(pos && neg);
    }
    for subset in subsets(normals.len(), n - 1) {
        let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let Some(d) = kernel_line(&rows, n) else {
            continue;
        };
        for dir in [d.clone(), d.iter().map(|v| -v).collect::<Vec<_>>()] {
            if normals.iter().all(|a| dot(a, &dir) <= Rational::zero()) {
                return true;
            }
        }
    }
    false
}

fn subsets(len: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, len: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            if len - i < size - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, len, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, len, size, &mut Vec::new(), &mut out);
    out
}

/// Cone point used at every level of the recursive star triangulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Apex {
    /// Average of the face's vertices.
    #[default]
    Barycenter,
    /// The face's first vertex in enumeration order.
    FirstVertex,
    /// The face's last vertex in enumeration order.
    LastVertex,
}

/// Simplices (as vertex lists) of a triangulation of `q`.
pub fn triangulate(q: &RationalPolytope, apex: Apex) -> Vec<Vec<Vec<Rational>>> {
    let all: BTreeSet<usize> = (0..q.vertices.len()).collect();
    let mut out = Vec::new();
    star(q, &all, q.dim, apex, &mut Vec::new(), &mut out);
    out
}

fn star(
    q: &RationalPolytope,
    face: &BTreeSet<usize>,
    dim: usize,
    apex: Apex,
    prefix: &mut Vec<Vec<Rational>>,
    out: &mut Vec<Vec<Vec<Rational>>>,
) {
    if dim == 0 {
        let v = *face.iter().next().expect("vertex face");
        let mut simplex = prefix.clone();
        simplex.push(q.vertices[v].clone());
        out.push(simplex);
        return;
    }
    let (point, skip) = match apex {
        Apex::Barycenter => (barycenter(face.iter().map(|&v| &q.vertices[v])), None),
        Apex::FirstVertex => {
            let v = *face.iter().next().expect("non-empty face");
            (q.vertices[v].clone(), Some(v))
        }
        Apex::LastVertex => {
            let v = *face.iter().next_back().expect("non-empty face");
            (q.vertices[v].clone(), Some(v))
        }
    };
    let mut seen = BTreeSet::new();
    for f in 0..q.normals.len() {
        let sub: BTreeSet<usize> = face
            .iter()
            .copied()
            .filter(|&v| q.incidence[v].contains(&f))
            .collect();
        if sub.len() == face.len() || skip.is_some_and(|v| sub.contains(&v)) {
            continue;
        }
        if q.face_dim(&sub) != dim as isize - 1 || !seen.insert(sub.clone()) {
            continue;
        }
        prefix.push(point.clone());
        star(q, &sub, dim - 1, apex, prefix, out);
        prefix.pop();
    }
}

fn barycenter<'a>(points: impl Iterator<Item = &'a Vec<Rational>>) -> Vec<Rational> {
    let mut sum: Vec<Rational> = Vec::new();
    let mut count = 0i64;
    for p in points {
        if sum.is_empty() {
            sum = vec![Rational::zero(); p.len()];
        }
        for (s, x) in sum.iter_mut().zip(p) {
            *s += x;
        }
        count += 1;
    }
    let k = Rational::from_integer(count.into());
    sum.into_iter().map(|s| s / &k).collect()
}

fn simplex_volume(simplex: &[Vec<Rational>]) -> Rational {
    let n = simplex.len() - 1;
    let rows: Vec<Vec<Rational>> = simplex[1..]
        .iter()
        .map(|p| p.iter().zip(&simplex[0]).map(|(a, b)| a - b).collect())
        .collect();
    abs_det(&rows) / factorial(n as u32)
}

/// Euclidean volume and `∫⟨y, ξ⟩ dy` from one triangulation.
pub fn volume_and_moment(q: &RationalPolytope, xi: &[Rational], apex: Apex) -> (Rational, Rational) {
    let mut volume = Rational::zero();
    let mut moment = Rational::zero();
    for simplex in triangulate(q, apex) {
        let vol = simplex_volume(&simplex);
        moment += &vol * dot(&barycenter(simplex.iter()), xi);
        volume += vol;
    }
    (volume, moment)
}

pub fn volume(q: &RationalPolytope) -> Rational {
    volume_and_moment(q, &vec![Rational::zero(); q.dim], Apex::default()).0
}

pub fn linear_moment(q: &RationalPolytope, xi: &[Rational]) -> Result<Rational, ToricError> {
    check_direction(q.dim, xi.len())?;
    Ok(volume_and_moment(q, xi, Apex::default()).1)
}

fn check_direction(expected: usize, found: usize) -> Result<(), ToricError> {
    if expected != found {
        return Err(ToricError::DirectionLength { expected, found });
    }
    Ok(())
}

pub fn direction(xi: &[i64]) -> Vec<Rational> {
    xi.iter().map(|&v| Rational::from_integer(v.into())).collect()
}

/// `Σ_α ∫_{P_α} ⟨y, ξ⟩ dy / Vol(P_α)` at `x`.
pub fn fut_toric(polytopes: &[ParamPolytope], xi: &[i64], x: &Rational) -> Result<Rational, ToricError> {
    if polytopes.is_empty() {
        return Err(ToricError::NoPolytopes);
    }
    let xi = direction(xi);
    let mut total = Rational::zero();
    for p in polytopes {
        check_direction(p.dim, xi.len())?;
        let q = realize(p, x)?;
        let (vol, moment) = volume_and_moment(&q, &xi, Apex::default());
        total += moment / vol;
    }
    Ok(total)
}

/// Lagrange interpolation of `x ↦ Vol(P(x))` through the given samples.
pub fn volume_polynomial(p: &ParamPolytope, samples: &[Rational], var: &str) -> Result<ParamPoly, ToricError> {
    let distinct: BTreeSet<&Rational> = samples.iter().collect();
    if distinct.len() < p.dim + 1 {
        return Err(ToricError::TooFewSamples {
            needed: p.dim + 1,
            got: distinct.len(),
        });
    }
    let mut points = Vec::new();
    for x in distinct {
        points.push((x.clone(), volume(&realize(p, x)?)));
    }
    Ok(interpolate(&points, var))
}

pub fn interpolate(points: &[(Rational, Rational)], var: &str) -> ParamPoly {
    let mut total = ParamPoly::zero(var);
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = ParamPoly::one(var);
        let mut denom = Rational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = &basis * &ParamPoly::new(vec![-xj.clone(), Rational::one()], var);
                denom *= xi - xj;
            }
        }
        total = &total + &basis.scale(&(yi / denom));
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinkowskiOutcome {
    Pass,
    Fail {
        normal: Vec<i64>,
        sum: Rational,
        whole: Rational,
    },
    Inconclusive {
        reason: String,
    },
}

impl MinkowskiOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, Self::Pass)
    }
}

/// Primitive normal with the offset rescaled accordingly.
fn primitive_facet(normal: &[i64], offset: &Rational) -> (Vec<i64>, Rational) {
    let g = normal.iter().fold(0i64, |g, &v| g.gcd(&v));
    if g == 0 {
        return (normal.to_vec(), offset.clone());
    }
    let g = g.abs();
    (
        normal.iter().map(|v| v / g).collect(),
        offset / Rational::from_integer(g.into()),
    )
}

type OffsetsByNormal = BTreeMap<Vec<i64>, Rational>;
type IncidenceByNormal = BTreeSet<BTreeSet<Vec<i64>>>;

/// Facet offsets keyed by primitive normal, and vertex incidence as sets of normals.
fn combinatorics(p: &ParamPolytope, x: &Rational) -> Result<(OffsetsByNormal, IncidenceByNormal), ToricError> {
    let q = realize(p, x)?;
    let redundant = q.redundant_facets();
    let mut offsets = BTreeMap::new();
    let mut keys = Vec::new();
    for (i, f) in p.facets.iter().enumerate() {
        let (normal, offset) = primitive_facet(&f.normal, &q.offsets[i]);
        keys.push(normal.clone());
        if !redundant.contains(&i) {
            offsets.insert(normal, offset);
        }
    }
    let incidence = q
        .incidence
        .iter()
        .map(|inc| {
            inc.iter()
                .filter(|i| !redundant.contains(i))
                .map(|&i| keys[i].clone())
                .collect()
        })
        .collect();
    Ok((offsets, incidence))
}

/// Strong-isomorphism check of `Σ parts = whole` at `x`.
pub fn minkowski_check(
    parts: &[ParamPolytope],
    whole: &ParamPolytope,
    x: &Rational,
) -> Result<MinkowskiOutcome, ToricError> {
    if parts.is_empty() {
        return Err(ToricError::NoPolytopes);
    }
    for p in parts {
        if p.dim != whole.dim {
            return Err(ToricError::AmbientMismatch {
                left: p.dim,
                right: whole.dim,
            });
        }
    }
    let (whole_offsets, whole_incidence) = combinatorics(whole, x)?;
    let mut sums: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
    for (k, p) in parts.iter().enumerate() {
        let (offsets, incidence) = combinatorics(p, x)?;
        if offsets.keys().ne(whole_offsets.keys()) {
            return Ok(MinkowskiOutcome::Inconclusive {
                reason: format!("part {} has a different normal set", k + 1),
            });
        }
        if incidence != whole_incidence {
            return Ok(MinkowskiOutcome::Inconclusive {
                reason: format!("part {} has a different vertex-facet incidence", k + 1),
            });
        }
        for (normal, offset) in offsets {
            *sums.entry(normal).or_insert_with(Rational::zero) += offset;
        }
    }
    for (normal, whole) in whole_offsets {
        let sum = sums.remove(&normal).unwrap_or_else(Rational::zero);
        if sum != whole {
            return Ok(MinkowskiOutcome::Fail { normal, sum, whole });
        }
    }
    Ok(MinkowskiOutcome::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn unit_cube(n: usize) -> ParamPolytope {
        let mut normals = Vec::new();
        let mut offsets = Vec::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            normals.push(e.clone());
            offsets.push(int(1));
            e[i] = -1;
            normals.push(e);
            offsets.push(int(0));
        }
        ParamPolytope::from_constant(&normals, &offsets, "c").unwrap()
    }

    fn simplex(n: usize) -> ParamPolytope {
        let mut normals: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = -1;
                e
            })
            .collect();
        normals.push(vec![1; n]);
        let mut offsets = vec![int(0); n];
        offsets.push(int(1));
        ParamPolytope::from_constant(&normals, &offsets, "c").unwrap()
    }

    fn segment(lo: i64, hi: i64) -> ParamPolytope {
        ParamPolytope::from_constant(&[vec![1], vec![-1]], &[int(hi), int(-lo)], "c").unwrap()
    }

    #[test]
    fn cube() {
        let q = realize(&unit_cube(4), &int(0)).unwrap();
        assert_eq!(q.vertices().len(), 16);
        assert_eq!(volume(&q), int(1));
        assert_eq!(linear_moment(&q, &direction(&[1, 0, 0, 0])).unwrap(), rat(1, 2));
        assert!(q.redundant_facets().is_empty());
    }

    #[test]
    fn standard_simplex() {
        let q = realize(&simplex(4), &int(0)).unwrap();
        assert_eq!(q.vertices().len(), 5);
        assert_eq!(volume(&q), rat(1, 24));
        assert_eq!(linear_moment(&q, &direction(&[1, 0, 0, 0])).unwrap(), rat(1, 120));
    }

    #[test]
    fn apex_choice_is_irrelevant() {
        let q = realize(&unit_cube(3), &int(0)).unwrap();
        let xi = direction(&[1, 2, 3]);
        let base = volume_and_moment(&q, &xi, Apex::Barycenter);
        assert_eq!(volume_and_moment(&q, &xi, Apex::FirstVertex), base);
        assert_eq!(volume_and_moment(&q, &xi, Apex::LastVertex), base);
    }

    #[test]
    fn geometry_errors() {
        let half_line = ParamPolytope::from_constant(&[vec![1]], &[int(1)], "c").unwrap();
        assert!(matches!(realize(&half_line, &int(0)), Err(ToricError::Unbounded { .. })));
        let wedge = ParamPolytope::from_constant(&[vec![1, 0], vec![0, 1]], &[int(1), int(1)], "c").unwrap();
        assert!(matches!(realize(&wedge, &int(0)), Err(ToricError::Unbounded { .. })));
        let empty = segment(2, 1);
        assert!(matches!(realize(&empty, &int(0)), Err(ToricError::Empty { .. })));
        let flat = ParamPolytope::from_constant(
            &[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
            &[int(1), int(0), int(0), int(0)],
            "c",
        )
        .unwrap();
        assert!(matches!(realize(&flat, &int(0)), Err(ToricError::Degenerate { .. })));
        let redundant = ParamPolytope::from_constant(
            &[vec![1], vec![-1], vec![1]],
            &[int(1), int(0), int(2)],
            "c",
        )
        .unwrap();
        assert!(matches!(redundant.check_at(&int(0)), Err(ToricError::Redundant { index: 2, .. })));
    }

    #[test]
    fn minkowski_examples() {
        let pass = minkowski_check(&[segment(0, 1), segment(0, 1)], &segment(0, 2), &int(0)).unwrap();
        assert_eq!(pass, MinkowskiOutcome::Pass);
        let fail = minkowski_check(&[segment(0, 1), segment(0, 1)], &segment(0, 1), &int(0)).unwrap();
        assert_eq!(
            fail,
            MinkowskiOutcome::Fail {
                normal: vec![1],
                sum: int(2),
                whole: int(1)
            }
        );
        let other = minkowski_check(&[unit_cube(2)], &simplex(2), &int(0)).unwrap();
        assert!(matches!(other, MinkowskiOutcome::Inconclusive { .. }));
    }

    #[test]
    fn centered_segments() {
        let half = ParamPolytope::from_constant(&[vec![1], vec![-1]], &[rat(1, 2), rat(1, 2)], "c").unwrap();
        assert_eq!(fut_toric(&[half.clone(), half], &[1], &int(0)).unwrap(), int(0));
    }

    #[test]
    fn parametric_interpolation() {
        // [0, c] x [0, 1 - c]: area c - c^2
        let p = ParamPolytope::new(
            2,
            vec![
                Facet { normal: vec![1, 0], offset: ParamPoly::parse("c", "c").unwrap() },
                Facet { normal: vec![-1, 0], offset: ParamPoly::zero("c") },
                Facet { normal: vec![0, 1], offset: ParamPoly::parse("1-c", "c").unwrap() },
                Facet { normal: vec![0, -1], offset: ParamPoly::zero("c") },
            ],
        )
        .unwrap();
        let samples = [rat(1, 4), rat(1, 3), rat(1, 2), rat(2, 3)];
        assert_eq!(
            volume_polynomial(&p, &samples, "c").unwrap(),
            ParamPoly::parse("c-c^2", "c").unwrap()
        );
    }

    #[test]
    fn rejects_quadratic_offset() {
        let f = Facet {
            normal: vec![1],
            offset: ParamPoly::parse("c^2", "c").unwrap(),
        };
        assert!(matches!(
            ParamPolytope::new(1, vec![f]),
            Err(ToricError::NonAffineOffset { .. })
        ));
    }
}

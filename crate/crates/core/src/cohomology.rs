//! Truncated graded polynomial rings standing in for the cohomology of a
//! fixed-point component, e.g. `Q(c)[a,b]/(a^2, b^3)` for `CP^1 x CP^2`, and
//! equivariant classes `scalar + nilpotent` over them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;
use thiserror::Error;

use crate::arith::{binomial, Rational, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("classes live in different rings")]
    RingMismatch,
    #[error("bad monomial `{0}`")]
    BadMonomial(String),
    #[error("degenerate fixed-point datum: scalar part is zero")]
    DegenerateFixedPoint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// Smallest power that vanishes.
    pub order: u32,
    /// Real degree, even and at least 2.
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, order: u32, degree: u32) -> Self {
        Self {
            name: name.into(),
            order,
            degree,
        }
    }

    fn complex_degree(&self) -> u32 {
        self.degree / 2
    }
}

/// Exponent vector, one entry per generator.
pub type Monomial = Vec<u32>;

/// Presentation of a product of truncated polynomial algebras together with
/// its fundamental-class monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    generators: Vec<Generator>,
    top: Monomial,
    dim: u32,
}

pub type Ring = Arc<RingSpec>;

/// Validates a ring presentation and returns a shareable handle.
pub fn ring_create(
    generators: Vec<Generator>,
    top: Monomial,
    dim: u32,
) -> Result<Ring, CohomologyError> {
    let bad = |msg: String| Err(CohomologyError::InvalidRing(msg));
    if generators.is_empty() {
        return bad("at least one generator is required".into());
    }
    if top.len() != generators.len() {
        return bad(format!(
            "top monomial has {} exponents for {} generators",
            top.len(),
            generators.len()
        ));
    }
    for (i, g) in generators.iter().enumerate() {
        if g.name.is_empty() || !g.name.chars().all(char::is_alphabetic) {
            return bad(format!("generator name `{}` must be alphabetic", g.name));
        }
        if generators[..i].iter().any(|h| h.name == g.name) {
            return bad(format!("duplicate generator `{}`", g.name));
        }
        if g.order < 1 {
            return bad(format!("generator `{}` has nilpotency order 0", g.name));
        }
        if g.degree < 2 || g.degree % 2 != 0 {
            return bad(format!(
                "generator `{}` has degree {}; expected an even degree >= 2",
                g.name, g.degree
            ));
        }
        if top[i] + 1 > g.order {
            return bad(format!(
                "top exponent {} of `{}` exceeds nilpotency order {}",
                top[i], g.name, g.order
            ));
        }
    }
    let top_degree: u32 = generators
        .iter()
        .zip(&top)
        .map(|(g, e)| g.complex_degree() * e)
        .sum();
    if top_degree != dim {
        return bad(format!(
            "top monomial has complex degree {top_degree} but the component has dimension {dim}"
        ));
    }
    Ok(Arc::new(RingSpec {
        generators,
        top,
        dim,
    }))
}

impl RingSpec {
    /// Cohomology of a point: one generator of order 1, empty top monomial.
    pub fn point() -> Ring {
        ring_create(vec![Generator::new("x", 1, 2)], vec![0], 0).expect("point ring is valid")
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn top(&self) -> &Monomial {
        &self.top
    }

    /// Complex dimension of the component.
    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn is_point(&self) -> bool {
        self.dim == 0
    }

    pub fn complex_degree(&self, mono: &[u32]) -> u32 {
        self.generators
            .iter()
            .zip(mono)
            .map(|(g, e)| g.complex_degree() * e)
            .sum()
    }

    /// Whether the monomial survives in the quotient ring.
    pub fn is_live(&self, mono: &[u32]) -> bool {
        mono.iter().zip(&self.generators).all(|(e, g)| *e < g.order)
            && self.complex_degree(mono) <= self.dim
    }

    fn is_unit_monomial(mono: &[u32]) -> bool {
        mono.iter().all(|e| *e == 0)
    }

    /// Parses `"a"`, `"ab^2"`, `"a*b^2"`, `"1"`.
    pub fn parse_monomial(&self, text: &str) -> Result<Monomial, CohomologyError> {
        parse_monomial_over(&self.generators, text)
    }

    pub fn format_monomial(&self, mono: &[u32]) -> String {
        let mut out = String::new();
        for (g, e) in self.generators.iter().zip(mono) {
            match e {
                0 => {}
                1 => out.push_str(&g.name),
                _ => out.push_str(&format!("{}^{e}", g.name)),
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

/// Monomial parsing against a bare generator list.
pub fn parse_monomial_over(generators: &[Generator], text: &str) -> Result<Monomial, CohomologyError> {
    let bad = || CohomologyError::BadMonomial(text.to_string());
    let mut mono = vec![0; generators.len()];
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned == "1" {
        return Ok(mono);
    }
    let mut rest = cleaned.as_str();
    // longest names first so that `ab` is not read as `a` when both exist
    let mut order: Vec<usize> = (0..generators.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(generators[i].name.len()));
    while !rest.is_empty() {
        rest = rest.strip_prefix('*').unwrap_or(rest);
        let idx = order
            .iter()
            .copied()
            .find(|&i| rest.starts_with(&generators[i].name))
            .ok_or_else(bad)?;
        rest = &rest[generators[idx].name.len()..];
        let mut exp = 1;
        if let Some(after) = rest.strip_prefix('^') {
            let digits: String = after.chars().take_while(char::is_ascii_digit).collect();
            exp = digits.parse().map_err(|_| bad())?;
            rest = &after[digits.len()..];
        }
        mono[idx] += exp;
    }
    Ok(mono)
}

/// Positive-degree class: finite map from live, non-unit monomials to
/// nonzero coefficients, kept in lexicographic monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotentClass {
    ring: Ring,
    var: String,
    terms: BTreeMap<Monomial, RationalFunction>,
}

impl NilpotentClass {
    pub fn zero(ring: &Ring, var: impl Into<String>) -> Self {
        Self {
            ring: ring.clone(),
            var: var.into(),
            terms: BTreeMap::new(),
        }
    }

    /// Builds a class, dropping monomials that vanish in the ring. The unit
    /// monomial is rejected: degree-0 parts belong to an equivariant scalar.
    pub fn from_terms(
        ring: &Ring,
        var: impl Into<String>,
        terms: impl IntoIterator<Item = (Monomial, RationalFunction)>,
    ) -> Result<Self, CohomologyError> {
        let mut out = Self::zero(ring, var);
        for (mono, coeff) in terms {
            if mono.len() != ring.generators.len() || RingSpec::is_unit_monomial(&mono) {
                return Err(CohomologyError::BadMonomial(format!("{mono:?}")));
            }
            out.accumulate(mono, coeff);
        }
        Ok(out)
    }

    /// Single generator `ring.generators[index]` with coefficient 1.
    pub fn generator(ring: &Ring, var: impl Into<String>, index: usize) -> Self {
        let mut mono = vec![0; ring.generators.len()];
        mono[index] = 1;
        let var = var.into();
        let one = RationalFunction::one(var.clone());
        Self::from_terms(ring, var, [(mono, one)]).expect("generator monomial")
    }

    fn accumulate(&mut self, mono: Monomial, coeff: RationalFunction) {
        if !self.ring.is_live(&mono) || coeff.is_zero() {
            return;
        }
        match self.terms.get(&mono) {
            Some(existing) => {
                let sum = existing + &coeff;
                if sum.is_zero() {
                    self.terms.remove(&mono);
                } else {
                    self.terms.insert(mono, sum);
                }
            }
            None => {
                self.terms.insert(mono, coeff);
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, RationalFunction> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &[u32]) -> RationalFunction {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(|| RationalFunction::zero(self.var.clone()))
    }

    fn check_ring(&self, other: &Self) -> Result<(), CohomologyError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(CohomologyError::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, CohomologyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (mono, coeff) in &other.terms {
            out.accumulate(mono.clone(), coeff.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&RationalFunction::constant(-Rational::one(), self.var.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CohomologyError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &RationalFunction) -> Self {
        let mut out = Self::zero(&self.ring, self.var.clone());
        for (mono, coeff) in &self.terms {
            out.accumulate(mono.clone(), coeff * k);
        }
        out
    }

    pub fn pow(&self, exp: u32) -> NilpotentClass {
        assert!(exp >= 1, "nilpotent classes have no multiplicative unit");
        let mut acc = self.clone();
        for _ in 1..exp {
            acc = class_mul(&acc, self).expect("same ring");
        }
        acc
    }
}

/// Product in the truncated ring; monomials outside the nilpotency bounds
/// or above the top degree are discarded.
pub fn class_mul(x: &NilpotentClass, y: &NilpotentClass) -> Result<NilpotentClass, CohomologyError> {
    x.check_ring(y)?;
    let mut out = NilpotentClass::zero(&x.ring, x.var.clone());
    for (mx, cx) in &x.terms {
        for (my, cy) in &y.terms {
            let mono: Monomial = mx.iter().zip(my).map(|(a, b)| a + b).collect();
            if x.ring.is_live(&mono) {
                out.accumulate(mono, cx * cy);
            }
        }
    }
    Ok(out)
}

/// `scalar + nilpotent`: the scalar is the degree-0 equivariant part
/// (a Hamiltonian value or a weight).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantClass {
    pub scalar: RationalFunction,
    pub nilpotent: NilpotentClass,
}

impl EquivariantClass {
    pub fn new(scalar: RationalFunction, nilpotent: NilpotentClass) -> Self {
        Self { scalar, nilpotent }
    }

    pub fn identity(ring: &Ring, var: impl Into<String>) -> Self {
        let var = var.into();
        Self::new(
            RationalFunction::one(var.clone()),
            NilpotentClass::zero(ring, var),
        )
    }

    pub fn scalar_only(ring: &Ring, scalar: RationalFunction) -> Self {
        let var = scalar.var().to_string();
        Self::new(scalar, NilpotentClass::zero(ring, var))
    }

    pub fn ring(&self) -> &Ring {
        self.nilpotent.ring()
    }

    pub fn add(&self, other: &Self) -> Result<Self, CohomologyError> {
        Ok(Self::new(
            &self.scalar + &other.scalar,
            self.nilpotent.add(&other.nilpotent)?,
        ))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CohomologyError> {
        let cross = class_mul(&self.nilpotent, &other.nilpotent)?;
        let nilpotent = self
            .nilpotent
            .scale(&other.scalar)
            .add(&other.nilpotent.scale(&self.scalar))?
            .add(&cross)?;
        Ok(Self::new(&self.scalar * &other.scalar, nilpotent))
    }

    /// Adds a constant to the scalar part.
    pub fn shift_scalar(&self, by: &Rational) -> Self {
        let shift = RationalFunction::constant(by.clone(), self.scalar.var().to_string());
        Self::new(&self.scalar + &shift, self.nilpotent.clone())
    }
}

/// `x^p` by the binomial expansion `Σ_j C(p,j) s^(p-j) n^j`, which terminates
/// at `j = dim` because `n` is nilpotent.
pub fn equiv_pow(x: &EquivariantClass, p: u32) -> EquivariantClass {
    let ring = x.ring().clone();
    let var = x.scalar.var().to_string();
    let mut nilpotent = NilpotentClass::zero(&ring, var.clone());
    let mut n_power: Option<NilpotentClass> = None;
    for j in 1..=p.min(ring.dim()) {
        let next = match &n_power {
            None => x.nilpotent.clone(),
            Some(prev) => class_mul(prev, &x.nilpotent).expect("same ring"),
        };
        if next.is_zero() {
            break;
        }
        let coeff = x.scalar.pow(p - j).scale(&binomial(p, j));
        nilpotent = nilpotent.add(&next.scale(&coeff)).expect("same ring");
        n_power = Some(next);
    }
    EquivariantClass::new(x.scalar.pow(p), nilpotent)
}

/// Inverse of a class with nonzero scalar part, `s^-1 Σ_{j=0}^{dim} (-n/s)^j`.
pub fn invert_unit(x: &EquivariantClass) -> Result<EquivariantClass, CohomologyError> {
    if x.scalar.is_zero() {
        return Err(CohomologyError::DegenerateFixedPoint);
    }
    let ring = x.ring().clone();
    let inv_s = x.scalar.recip().expect("nonzero scalar");
    let ratio = x.nilpotent.scale(&(-&inv_s));
    let mut series = NilpotentClass::zero(&ring, x.scalar.var().to_string());
    let mut term: Option<NilpotentClass> = None;
    for _ in 1..=ring.dim() {
        let next = match &term {
            None => ratio.clone(),
            Some(prev) => class_mul(prev, &ratio)?,
        };
        if next.is_zero() {
            break;
        }
        series = series.add(&next)?;
        term = Some(next);
    }
    Ok(EquivariantClass::new(inv_s.clone(), series.scale(&inv_s)))
}

/// Pairing with the fundamental class: the coefficient of the top monomial
/// (the scalar itself on a point).
pub fn integrate(x: &EquivariantClass) -> RationalFunction {
    if x.ring().is_point() {
        x.scalar.clone()
    } else {
        let mut c = x.nilpotent.coefficient(x.ring().top());
        if c.is_zero() {
            c = RationalFunction::zero(x.scalar.var().to_string());
        }
        c
    }
}

impl fmt::Display for NilpotentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(mono, coeff)| {
                let m = self.ring.format_monomial(mono);
                if coeff.is_constant() && coeff.as_constant().is_some_and(|c| c.is_one()) {
                    m
                } else {
                    format!("({}){}", coeff.to_factored_string(), m)
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Display for EquivariantClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + [{}]", self.scalar.to_factored_string(), self.nilpotent)
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{format_rational, parse_rational, ArithError, Rational};

/// Dense univariate polynomial over the rationals in a named formal parameter.
///
/// `coeffs[i]` is the coefficient of `var^i`; trailing zeros are never stored,
/// so the zero polynomial has no coefficients. Constants are compatible with
/// any parameter name.
#[derive(Debug, Clone)]
pub struct ParamPoly {
    coeffs: Vec<Rational>,
    var: String,
}

impl PartialEq for ParamPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && (self.var == other.var || self.is_constant())
    }
}

impl Eq for ParamPoly {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Checked add/sub/mul that rejects two non-constant polynomials in
/// different parameters.
pub fn poly_arith(a: &ParamPoly, b: &ParamPoly, op: PolyOp) -> Result<ParamPoly, ArithError> {
    let var = a.common_var(b)?;
    let coeffs = match op {
        PolyOp::Add => add_coeffs(&a.coeffs, &b.coeffs, false),
        PolyOp::Sub => add_coeffs(&a.coeffs, &b.coeffs, true),
        PolyOp::Mul => mul_coeffs(&a.coeffs, &b.coeffs),
    };
    Ok(ParamPoly::new(coeffs, var))
}

/// Monic gcd; `gcd(p, 0)` is `p` made monic.
pub fn poly_gcd(a: &ParamPoly, b: &ParamPoly) -> Result<ParamPoly, ArithError> {
    let var = a.common_var(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(ArithError::ZeroGcd);
    }
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y);
        x = y;
        y = r;
    }
    let mut g = x.monic();
    g.var = var;
    Ok(g)
}

fn add_coeffs(a: &[Rational], b: &[Rational], subtract: bool) -> Vec<Rational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            if subtract {
                x - y
            } else {
                x + y
            }
        })
        .collect()
}

fn mul_coeffs(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl ParamPoly {
    pub fn new(mut coeffs: Vec<Rational>, var: impl Into<String>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self {
            coeffs,
            var: var.into(),
        }
    }

    pub fn zero(var: impl Into<String>) -> Self {
        Self::new(Vec::new(), var)
    }

    pub fn one(var: impl Into<String>) -> Self {
        Self::constant(Rational::one(), var)
    }

    pub fn constant(value: Rational, var: impl Into<String>) -> Self {
        Self::new(vec![value], var)
    }

    /// The parameter itself, `var`.
    pub fn identity(var: impl Into<String>) -> Self {
        Self::new(vec![Rational::zero(), Rational::one()], var)
    }

    /// Builds from integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64], var: impl Into<String>) -> Self {
        Self::new(
            coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(),
            var,
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn with_var(mut self, var: impl Into<String>) -> Self {
        self.var = var.into();
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant term (zero for the zero polynomial).
    pub fn constant_term(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn common_var(&self, other: &Self) -> Result<String, ArithError> {
        if self.var == other.var || other.is_constant() {
            Ok(self.var.clone())
        } else if self.is_constant() {
            Ok(other.var.clone())
        } else {
            Err(ArithError::ParameterMismatch {
                left: self.var.clone(),
                right: other.var.clone(),
            })
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect(), self.var.clone())
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        self.scale(&(Rational::one() / lead))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
            .collect();
        Self::new(coeffs, self.var.clone())
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(self.var.clone()), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / &lead;
            if q.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * dc;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (
            Self::new(quot, self.var.clone()),
            Self::new(rem, self.var.clone()),
        )
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.var.clone());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Splits `self = content * primitive` with `primitive` having coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn content_and_primitive(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let lcm_den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm_den.clone())).to_integer())
            .collect();
        let mut g = scaled.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if scaled.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let prim = scaled.iter().map(|c| c / &g).collect();
        (Rational::new(g, lcm_den), prim)
    }

    /// Parses a polynomial such as `"2c-1/2"`, `"106 - 112c"`, `"3c^2+(1/2)c"`.
    pub fn parse(text: &str, var: &str) -> Result<Self, ArithError> {
        let err = |reason: String| ArithError::Parse {
            text: text.to_string(),
            reason,
        };
        let cleaned: String = text
            .chars()
            .map(|ch| if ch == '\u{2212}' { '-' } else { ch })
            .filter(|ch| !ch.is_whitespace())
            .collect();
        if cleaned.is_empty() {
            return Err(err("empty expression".into()));
        }
        let mut terms: Vec<String> = Vec::new();
        let mut current = String::new();
        let mut depth = 0i32;
        for ch in cleaned.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            let prev = current.chars().last();
            let starts_term = (ch == '+' || ch == '-')
                && depth == 0
                && !current.is_empty()
                && !matches!(prev, Some('^' | '*' | '/' | '+' | '-'));
            if starts_term {
                terms.push(std::mem::take(&mut current));
            }
            current.push(ch);
        }
        terms.push(current);

        let mut coeffs: Vec<Rational> = Vec::new();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, term.strip_prefix('+').unwrap_or(&term)),
            };
            let (coef_text, power) = match body.find(var).filter(|_| !var.is_empty()) {
                Some(pos) => {
                    let tail = &body[pos + var.len()..];
                    let power = if tail.is_empty() {
                        1
                    } else if let Some(p) = tail.strip_prefix('^') {
                        p.parse::<usize>()
                            .map_err(|_| err(format!("bad exponent in `{term}`")))?
                    } else {
                        return Err(err(format!("unexpected `{tail}` in `{term}`")));
                    };
                    let head = body[..pos].trim_end_matches('*');
                    (head, power)
                }
                None => (body, 0),
            };
            let coef_text = coef_text
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .unwrap_or(coef_text);
            let coef = if coef_text.is_empty() {
                if power == 0 {
                    return Err(err(format!("empty term `{term}`")));
                }
                Rational::one()
            } else {
                parse_rational(coef_text).map_err(|_| err(format!("bad coefficient in `{term}`")))?
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, Rational::zero());
            }
            coeffs[power] += coef * Rational::from_integer(sign.into());
        }
        Ok(Self::new(coeffs, var))
    }

    /// Integer-coefficient rendering, highest degree first, e.g. `112c^2-112c+23`.
    pub(crate) fn fmt_terms(coeffs: &[Rational], var: &str) -> String {
        let mut out = String::new();
        for (i, c) in coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let magnitude = c.abs();
            if negative {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let mag = format_rational(&magnitude);
            match i {
                0 => out.push_str(&mag),
                _ => {
                    if !magnitude.is_one() {
                        out.push_str(&mag);
                        if !magnitude.denom().is_one() {
                            out.push('*');
                        }
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Self::fmt_terms(&self.coeffs, &self.var))
    }
}

// Operator forms panic on a parameter mismatch; use `poly_arith` for the checked path.

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        poly_arith(self, rhs, PolyOp::Add).expect("polynomial parameter mismatch")
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        poly_arith(self, rhs, PolyOp::Sub).expect("polynomial parameter mismatch")
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        poly_arith(self, rhs, PolyOp::Mul).expect("polynomial parameter mismatch")
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly::new(self.coeffs.iter().map(|c| -c).collect(), self.var.clone())
    }
}

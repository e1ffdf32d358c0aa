use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::factor::factor_partial;
use super::{format_rational, poly_gcd, ArithError, ParamPoly, Rational};

/// Quotient of two polynomials in canonical form: coprime, monic
/// denominator, any overall constant carried by the numerator. Structural
/// equality is mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: ParamPoly,
    den: ParamPoly,
}

/// Canonical form of `num / den`.
pub fn ratfun_reduce(num: &ParamPoly, den: &ParamPoly) -> Result<RationalFunction, ArithError> {
    let var = num.common_var(den)?;
    if den.is_zero() {
        return Err(ArithError::ZeroDenominator);
    }
    if num.is_zero() {
        return Ok(RationalFunction::zero(var));
    }
    let g = poly_gcd(num, den)?;
    let num = num.div_rem(&g).0;
    let den = den.div_rem(&g).0;
    let lead = den.leading();
    Ok(RationalFunction {
        num: num.scale(&(Rational::one() / &lead)).with_var(var.clone()),
        den: den.monic().with_var(var),
    })
}

/// Exact value at `x`; a vanishing denominator is reported as a pole.
pub fn ratfun_eval(f: &RationalFunction, x: &Rational) -> Result<Rational, ArithError> {
    let d = f.den.eval(x);
    if d.is_zero() {
        return Err(ArithError::Pole(x.clone()));
    }
    Ok(f.num.eval(x) / d)
}

impl RationalFunction {
    pub fn zero(var: impl Into<String>) -> Self {
        let var = var.into();
        Self {
            num: ParamPoly::zero(var.clone()),
            den: ParamPoly::one(var),
        }
    }

    pub fn one(var: impl Into<String>) -> Self {
        Self::constant(Rational::one(), var)
    }

    pub fn constant(value: Rational, var: impl Into<String>) -> Self {
        let var = var.into();
        Self {
            num: ParamPoly::constant(value, var.clone()),
            den: ParamPoly::one(var),
        }
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        let var = p.var().to_string();
        Self {
            num: p,
            den: ParamPoly::one(var),
        }
    }

    pub fn num(&self) -> &ParamPoly {
        &self.num
    }

    pub fn den(&self) -> &ParamPoly {
        &self.den
    }

    pub fn var(&self) -> &str {
        self.num.var()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the reduced denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The value when the function does not depend on the parameter.
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.constant_term())
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, ArithError> {
        ratfun_eval(self, x)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        if self.den == other.den {
            return ratfun_reduce(&(&self.num + &other.num), &self.den);
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        ratfun_reduce(&num, &(&self.den * &other.den))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.num.common_var(&other.num)?;
        ratfun_reduce(&(&self.num * &other.num), &(&self.den * &other.den))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        if other.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        ratfun_reduce(&(&self.num * &other.den), &(&self.den * &other.num))
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        Self::one(self.var()).checked_div(self)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        Self {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }

    /// Human-readable factored rendering, e.g.
    /// `-3(112c^2-112c+23)/((56c-3)(56c-53))`. Polynomials print expanded.
    pub fn to_factored_string(&self) -> String {
        if self.is_polynomial() {
            return self.num.to_string();
        }
        let num = factor_partial(&self.num);
        let den = factor_partial(&self.den);
        let constant = &num.content / &den.content;
        let factor_text = |factors: &[(ParamPoly, u32)]| -> String {
            factors
                .iter()
                .map(|(f, m)| {
                    if *m > 1 {
                        format!("({f})^{m}")
                    } else {
                        format!("({f})")
                    }
                })
                .collect()
        };
        let mut out = String::new();
        let num_factors = factor_text(&num.factors);
        if num_factors.is_empty() {
            out.push_str(&format_rational(&constant));
        } else {
            if constant == -Rational::one() {
                out.push('-');
            } else if !constant.is_one() {
                out.push_str(&format_rational(&constant));
            }
            if num.factors.len() == 1 && num.factors[0].1 == 1 && constant.is_one() {
                out.push_str(&num.factors[0].0.to_string());
            } else {
                out.push_str(&num_factors);
            }
        }
        out.push('/');
        if den.factors.len() == 1 && den.factors[0].1 == 1 {
            out.push_str(&factor_text(&den.factors));
        } else {
            out.push('(');
            out.push_str(&factor_text(&den.factors));
            out.push(')');
        }
        out
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl From<ParamPoly> for RationalFunction {
    fn from(p: ParamPoly) -> Self {
        Self::from_poly(p)
    }
}

// Operators panic on parameter mismatch, like their polynomial counterparts.

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_add(rhs).expect("rational function parameter mismatch")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_add(&-rhs).expect("rational function parameter mismatch")
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_mul(rhs).expect("rational function parameter mismatch")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

//! Exact coefficient arithmetic: rationals, univariate polynomials in the
//! formal parameter, and reduced rational functions.

mod factor;
mod poly;
mod ratfun;

pub use factor::{factor_partial, squarefree_decomposition, Factorization};
pub use poly::{poly_arith, poly_gcd, ParamPoly, PolyOp};
pub use ratfun::{ratfun_eval, ratfun_reduce, RationalFunction};

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("parameter mismatch: `{left}` vs `{right}`")]
    ParameterMismatch { left: String, right: String },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("pole at {0}")]
    Pole(Rational),
    #[error("cannot parse `{text}`: {reason}")]
    Parse { text: String, reason: String },
}

/// `n/d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"3"`, `"-1/2"`, `"−7/4"` (typographic minus accepted).
pub fn parse_rational(text: &str) -> Result<Rational, ArithError> {
    let cleaned: String = text
        .trim()
        .chars()
        .map(|ch| if ch == '\u{2212}' { '-' } else { ch })
        .filter(|ch| !ch.is_whitespace())
        .collect();
    let err = |reason: &str| ArithError::Parse {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let (num, den) = match cleaned.split_once('/') {
        Some((n, d)) => (n, d),
        None => (cleaned.as_str(), "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err("bad numerator"))?;
    let den = BigInt::from_str(den).map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Renders `p/q` (or `p` when integral) with an ASCII minus.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) fn sign_of(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}

/// Binomial coefficient as a rational.
pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Rational::from_integer(acc)
}

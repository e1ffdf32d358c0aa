//! Partial factorization over the rationals: square-free decomposition
//! followed by extraction of rational linear factors. Whatever remains of
//! each square-free part is kept as a single (possibly reducible) factor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{poly_gcd, ParamPoly, Rational};

/// Trial division is only attempted for integers up to this magnitude.
const TRIAL_DIVISION_LIMIT: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// Overall rational constant.
    pub content: Rational,
    /// Primitive integer-coefficient factors with positive leading
    /// coefficient, paired with multiplicities; linear factors first.
    pub factors: Vec<(ParamPoly, u32)>,
}

/// Yun's algorithm. Returns monic square-free factors with multiplicities;
/// the constant polynomial yields an empty list.
pub fn squarefree_decomposition(p: &ParamPoly) -> Vec<(ParamPoly, u32)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let deriv = p.derivative();
    let b = poly_gcd(p, &deriv).expect("non-constant polynomial");
    let mut c = p.div_rem(&b).0;
    let mut d = &deriv.div_rem(&b).0 - &c.derivative();
    let mut mult = 1;
    while !c.is_constant() {
        let a = poly_gcd(&c, &d).expect("c is non-constant");
        if !a.is_constant() {
            out.push((a.monic(), mult));
        }
        c = c.div_rem(&a).0;
        d = &d.div_rem(&a).0 - &c.derivative();
        mult += 1;
    }
    out
}

/// `p = content * Π factor^mult`.
pub fn factor_partial(p: &ParamPoly) -> Factorization {
    let var = p.var().to_string();
    if p.is_constant() {
        return Factorization {
            content: p.constant_term(),
            factors: Vec::new(),
        };
    }
    let mut linear = Vec::new();
    let mut rest = Vec::new();
    for (sf, mult) in squarefree_decomposition(p) {
        let mut remaining = sf;
        for root in rational_roots(&remaining) {
            let lin = ParamPoly::new(vec![-root, Rational::one()], var.clone());
            remaining = remaining.div_rem(&lin).0;
            linear.push((primitive(&lin), mult));
        }
        if !remaining.is_constant() {
            rest.push((primitive(&remaining), mult));
        }
    }
    linear.sort_by_key(|f| linear_root(&f.0));
    let mut factors = linear;
    factors.extend(rest);
    let mut product = ParamPoly::one(var.clone());
    for (f, m) in &factors {
        product = &product * &f.pow(*m);
    }
    let content = p.leading() / product.leading();
    Factorization { content, factors }
}

fn linear_root(lin: &ParamPoly) -> Rational {
    -lin.constant_term() / lin.leading()
}

fn primitive(p: &ParamPoly) -> ParamPoly {
    let (_, prim) = p.content_and_primitive();
    ParamPoly::new(
        prim.into_iter().map(Rational::from_integer).collect(),
        p.var().to_string(),
    )
}

/// Distinct rational roots of a square-free polynomial, by the rational root
/// test on its primitive integer form. Gives up (returns what it found) when
/// the coefficients are too large to enumerate divisors.
pub(crate) fn rational_roots(p: &ParamPoly) -> Vec<Rational> {
    let mut roots = Vec::new();
    if p.is_constant() {
        return roots;
    }
    let (_, mut prim) = p.content_and_primitive();
    let var = p.var().to_string();
    while prim.first().is_some_and(Zero::is_zero) {
        if !roots.contains(&Rational::zero()) {
            roots.push(Rational::zero());
        }
        prim.remove(0);
    }
    if prim.len() <= 1 {
        return roots;
    }
    let lead = prim.last().cloned().expect("non-empty");
    let constant = prim[0].clone();
    let (Some(num_divs), Some(den_divs)) = (divisors(&constant), divisors(&lead)) else {
        return roots;
    };
    let poly = ParamPoly::new(prim.into_iter().map(Rational::from_integer).collect(), var);
    for n in &num_divs {
        for d in &den_divs {
            if n.gcd(d) != BigInt::one() {
                continue;
            }
            for candidate in [
                Rational::new(n.clone(), d.clone()),
                Rational::new(-n.clone(), d.clone()),
            ] {
                if poly.eval(&candidate).is_zero() && !roots.contains(&candidate) {
                    roots.push(candidate);
                }
            }
        }
    }
    roots
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > TRIAL_DIVISION_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            out.push(BigInt::from(i));
            if i * i != n {
                out.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn p(text: &str) -> ParamPoly {
        ParamPoly::parse(text, "c").unwrap()
    }

    #[test]
    fn splits_paper_denominator() {
        let den = &p("56c-3") * &p("56c-53");
        let f = factor_partial(&den.monic());
        assert_eq!(f.content, rat(1, 3136));
        assert_eq!(f.factors, vec![(p("56c-3"), 1), (p("56c-53"), 1)]);
    }

    #[test]
    fn keeps_irreducible_quadratic() {
        let f = factor_partial(&p("-336c^2+336c-69"));
        assert_eq!(f.content, int(-3));
        assert_eq!(f.factors, vec![(p("112c^2-112c+23"), 1)]);
    }

    #[test]
    fn multiplicities_from_squarefree_part() {
        let q = &(&p("c-1").pow(2) * &p("2c+1")) * &p("c^2+1").pow(3);
        let f = factor_partial(&q);
        assert_eq!(f.content, int(1));
        assert_eq!(
            f.factors,
            vec![(p("2c+1"), 1), (p("c-1"), 2), (p("c^2+1"), 3)]
        );
        let sf = squarefree_decomposition(&q);
        assert_eq!(sf.len(), 3);
    }

    #[test]
    fn roots_at_zero() {
        assert_eq!(rational_roots(&p("c^2-c")), vec![int(0), int(1)]);
    }
}

//! Certified real-root isolation by Sturm sequences and exact bisection,
//! with closed forms for rational and quadratic roots.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{
    factor_partial, format_rational, rat, sign_of, squarefree_decomposition, ArithError,
    ParamPoly, Rational, RationalFunction,
};

/// Default isolating-interval width, `10^-12`.
pub fn default_width() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u64).pow(12))
}

/// Open interval `(lower, upper)` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenInterval {
    pub lower: Rational,
    pub upper: Rational,
}

impl OpenInterval {
    pub fn new(lower: Rational, upper: Rational) -> Self {
        Self { lower, upper }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lower < x && x < &self.upper
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lower + &self.upper) / Rational::from_integer(2.into())
    }
}

/// `(p + q sqrt(d)) / r` with `d > 1` square-free and `r > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub p: BigInt,
    pub q: BigInt,
    pub d: BigInt,
    pub r: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedForm {
    Rational(Rational),
    Quadratic(QuadraticSurd),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatedRoot {
    /// Closed isolating interval; `lower == upper` for an exactly hit root.
    pub lower: Rational,
    pub upper: Rational,
    pub multiplicity: u32,
    pub closed_form: Option<ClosedForm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootReport {
    pub interval: OpenInterval,
    pub roots: Vec<IsolatedRoot>,
    /// Distinct roots in the open interval according to the Sturm sequence
    /// of the square-free part.
    pub sturm_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleDiagnostic {
    pub location: IsolatedRoot,
    pub inside: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FutRoots {
    pub report: RootReport,
    /// Real poles of the function, inside or outside the interval.
    pub poles: Vec<PoleDiagnostic>,
}

/// Quadratic-surd arithmetic `a + b sqrt(d)` used to certify closed forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdNumber {
    pub a: Rational,
    pub b: Rational,
    pub d: BigInt,
}

impl SurdNumber {
    pub fn rational(a: Rational, d: BigInt) -> Self {
        Self {
            a,
            b: Rational::zero(),
            d,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d: self.d.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = Rational::from_integer(self.d.clone());
        Self {
            a: &self.a * &other.a + &self.b * &other.b * d,
            b: &self.a * &other.b + &self.b * &other.a,
            d: self.d.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of `a + b sqrt(d)`.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rational::from_integer(self.d.clone());
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        let shifted = Self {
            a: &self.a - x,
            b: self.b.clone(),
            d: self.d.clone(),
        };
        shifted.signum().cmp(&0)
    }
}

impl QuadraticSurd {
    pub fn as_surd(&self) -> SurdNumber {
        let r = Rational::from_integer(self.r.clone());
        SurdNumber {
            a: Rational::from_integer(self.p.clone()) / &r,
            b: Rational::from_integer(self.q.clone()) / &r,
            d: self.d.clone(),
        }
    }

    pub fn approx(&self) -> f64 {
        let to = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN);
        (to(&self.p) + to(&self.q) * to(&self.d).sqrt()) / to(&self.r)
    }
}

impl ClosedForm {
    pub fn approx(&self) -> f64 {
        match self {
            ClosedForm::Rational(x) => x.to_f64().unwrap_or(f64::NAN),
            ClosedForm::Quadratic(s) => s.approx(),
        }
    }

    fn cmp_rational(&self, x: &Rational) -> Ordering {
        match self {
            ClosedForm::Rational(r) => r.cmp(x),
            ClosedForm::Quadratic(s) => s.as_surd().cmp_rational(x),
        }
    }

    fn lies_in(&self, lower: &Rational, upper: &Rational) -> bool {
        self.cmp_rational(lower) != Ordering::Less && self.cmp_rational(upper) != Ordering::Greater
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedForm::Rational(x) => f.write_str(&format_rational(x)),
            ClosedForm::Quadratic(s) => {
                let sign = if s.q.is_negative() { '-' } else { '+' };
                let q = s.q.abs();
                let surd = if q.is_one() {
                    format!("sqrt({})", s.d)
                } else {
                    format!("{q}*sqrt({})", s.d)
                };
                if s.r.is_one() {
                    write!(f, "{}{sign}{surd}", s.p)
                } else {
                    write!(f, "({}{sign}{surd})/{}", s.p, s.r)
                }
            }
        }
    }
}

impl IsolatedRoot {
    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    /// Midpoint as a float, for display only.
    pub fn approx(&self) -> f64 {
        match &self.closed_form {
            Some(cf) => cf.approx(),
            None => ((&self.lower + &self.upper) / rat(2, 1))
                .to_f64()
                .unwrap_or(f64::NAN),
        }
    }
}

/// Sturm sequence `p, p', -rem(...)...`.
pub fn sturm_sequence(p: &ParamPoly) -> Vec<ParamPoly> {
    let mut seq = vec![p.clone()];
    if p.is_zero() {
        return seq;
    }
    let mut prev = p.clone();
    let mut cur = p.derivative();
    while !cur.is_zero() {
        seq.push(cur.clone());
        let (_, r) = prev.div_rem(&cur);
        prev = cur;
        cur = -&r;
    }
    seq
}

/// Sign variations of the sequence at `x`, zeros skipped.
pub fn sign_variations(seq: &[ParamPoly], x: &Rational) -> usize {
    let signs: Vec<i32> = seq
        .iter()
        .map(|q| sign_of(&q.eval(x)))
        .filter(|s| *s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct roots of the square-free `p` in the open interval `(a, b)`.
fn count_open(seq: &[ParamPoly], a: &Rational, b: &Rational) -> usize {
    let at_b = seq[0].eval(b).is_zero() as usize;
    (sign_variations(seq, a) - sign_variations(seq, b)).saturating_sub(at_b)
}

/// Distinct real roots of `p` in the open interval, by Sturm's theorem on
/// the square-free part.
pub fn sturm_count(p: &ParamPoly, interval: &OpenInterval) -> usize {
    if p.is_constant() {
        return 0;
    }
    let sf = squarefree_part(p);
    let seq = sturm_sequence(&sf);
    count_open(&seq, &interval.lower, &interval.upper)
}

fn squarefree_part(p: &ParamPoly) -> ParamPoly {
    squarefree_decomposition(p)
        .into_iter()
        .fold(ParamPoly::one(p.var().to_string()), |acc, (f, _)| &acc * &f)
}

struct Pending {
    factor: usize,
    lower: Rational,
    upper: Rational,
    exact: bool,
}

fn bisect_isolate(
    seq: &[ParamPoly],
    factor: usize,
    lower: Rational,
    upper: Rational,
    out: &mut Vec<Pending>,
) {
    let n = count_open(seq, &lower, &upper);
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push(Pending {
            factor,
            lower,
            upper,
            exact: false,
        });
        return;
    }
    let mid = (&lower + &upper) / rat(2, 1);
    if seq[0].eval(&mid).is_zero() {
        out.push(Pending {
            factor,
            lower: mid.clone(),
            upper: mid.clone(),
            exact: true,
        });
    }
    bisect_isolate(seq, factor, lower, mid.clone(), out);
    bisect_isolate(seq, factor, mid, upper, out);
}

fn refine_once(seq: &[ParamPoly], root: &mut Pending) {
    if root.exact {
        return;
    }
    let mid = (&root.lower + &root.upper) / rat(2, 1);
    if seq[0].eval(&mid).is_zero() {
        root.lower = mid.clone();
        root.upper = mid;
        root.exact = true;
    } else if count_open(seq, &root.lower, &mid) == 1 {
        root.upper = mid;
    } else {
        root.lower = mid;
    }
}

/// Isolates the real roots of `p` in the open interval to the given width.
pub fn isolate_roots(
    p: &ParamPoly,
    interval: &OpenInterval,
    width: &Rational,
) -> Result<RootReport, ArithError> {
    if p.is_zero() {
        return Err(ArithError::Parse {
            text: "0".into(),
            reason: "cannot isolate the roots of the zero polynomial".into(),
        });
    }
    let factors = squarefree_decomposition(p);
    let sequences: Vec<Vec<ParamPoly>> = factors.iter().map(|(f, _)| sturm_sequence(f)).collect();

    let mut pending = Vec::new();
    for (i, seq) in sequences.iter().enumerate() {
        bisect_isolate(
            seq,
            i,
            interval.lower.clone(),
            interval.upper.clone(),
            &mut pending,
        );
    }
    for root in pending.iter_mut() {
        while !root.exact && &(&root.upper - &root.lower) > width {
            refine_once(&sequences[root.factor], root);
        }
    }
    // roots of different square-free factors are distinct; shrink until disjoint
    loop {
        pending.sort_by(|x, y| x.lower.cmp(&y.lower));
        let mut changed = false;
        for i in 1..pending.len() {
            if pending[i].lower <= pending[i - 1].upper {
                let (left, right) = pending.split_at_mut(i);
                let prev = left.last_mut().expect("i >= 1");
                let cur = &mut right[0];
                refine_once(&sequences[prev.factor], prev);
                refine_once(&sequences[cur.factor], cur);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let closed_forms: Vec<Vec<ClosedForm>> = factors.iter().map(|(f, _)| closed_forms(f)).collect();
    let roots = pending
        .into_iter()
        .map(|pend| {
            let closed_form = if pend.exact {
                Some(ClosedForm::Rational(pend.lower.clone()))
            } else {
                closed_forms[pend.factor]
                    .iter()
                    .find(|cf| cf.lies_in(&pend.lower, &pend.upper))
                    .cloned()
            };
            IsolatedRoot {
                lower: pend.lower,
                upper: pend.upper,
                multiplicity: factors[pend.factor].1,
                closed_form,
            }
        })
        .collect();
    Ok(RootReport {
        interval: interval.clone(),
        roots,
        sturm_count: sturm_count(p, interval),
    })
}

/// Closed forms for the roots of a square-free factor whose non-rational
/// part has degree at most 2.
fn closed_forms(f: &ParamPoly) -> Vec<ClosedForm> {
    let mut out = Vec::new();
    for (factor, _) in factor_partial(f).factors {
        match factor.degree() {
            Some(1) => {
                let root = -factor.constant_term() / factor.leading();
                out.push(ClosedForm::Rational(root));
            }
            Some(2) => out.extend(quadratic_roots(&factor)),
            _ => {}
        }
    }
    out
}

/// Real roots of a primitive integer quadratic as `(p ± q sqrt(d))/r`.
pub fn quadratic_roots(f: &ParamPoly) -> Vec<ClosedForm> {
    let (_, prim) = f.content_and_primitive();
    let (c0, c1, c2) = (&prim[0], &prim[1], &prim[2]);
    let disc: BigInt = c1 * c1 - BigInt::from(4) * c2 * c0;
    if disc.is_negative() {
        return Vec::new();
    }
    let (square, d) = split_square(&disc);
    if d.is_one() || d.is_zero() {
        let two_a = Rational::from_integer(BigInt::from(2) * c2);
        let s = Rational::from_integer(square.clone());
        let b = Rational::from_integer(c1.clone());
        let mut roots = vec![
            ClosedForm::Rational((-&b - &s) / &two_a),
            ClosedForm::Rational((-&b + &s) / &two_a),
        ];
        roots.dedup();
        return roots;
    }
    let mut forms = Vec::new();
    for sign in [-1, 1] {
        let mut p = -c1.clone();
        let mut q = &square * sign;
        let mut r = BigInt::from(2) * c2;
        let g = p.gcd(&q).gcd(&r);
        p /= &g;
        q /= &g;
        r /= &g;
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        forms.push(ClosedForm::Quadratic(QuadraticSurd {
            p,
            q,
            d: d.clone(),
            r,
        }));
    }
    forms
}

/// `n = s^2 * d` with `d` square-free, by trial division for small `n`.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    if n.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let sqrt = n.sqrt();
    if &(&sqrt * &sqrt) == n {
        return (sqrt, BigInt::one());
    }
    let Some(mut rest) = n.to_u64() else {
        return (BigInt::one(), n.clone());
    };
    let mut square = 1u64;
    let mut d = 1u64;
    let mut k = 2u64;
    while k * k <= rest && k < 1_000_000 {
        let mut e = 0;
        while rest % k == 0 {
            rest /= k;
            e += 1;
        }
        square *= k.pow(e / 2);
        if e % 2 == 1 {
            d *= k;
        }
        k += 1;
    }
    d *= rest;
    (BigInt::from(square), BigInt::from(d))
}

/// Evaluates `f` at a surd exactly.
pub fn eval_at_surd(f: &ParamPoly, x: &SurdNumber) -> SurdNumber {
    f.coeffs().iter().rev().fold(
        SurdNumber::rational(Rational::zero(), x.d.clone()),
        |acc, c| acc.mul(x).add(&SurdNumber::rational(c.clone(), x.d.clone())),
    )
}

/// Roots of the numerator of `f` in the interval, with the real poles of
/// `f` reported separately.
pub fn fut_roots(
    f: &RationalFunction,
    interval: &OpenInterval,
    width: &Rational,
) -> Result<FutRoots, ArithError> {
    let report = if f.num().is_constant() && !f.num().is_zero() {
        RootReport {
            interval: interval.clone(),
            roots: Vec::new(),
            sturm_count: 0,
        }
    } else {
        isolate_roots(f.num(), interval, width)?
    };
    let mut poles = Vec::new();
    if !f.den().is_constant() {
        let bound = cauchy_bound(f.den()) + Rational::one();
        let everywhere = OpenInterval::new(-bound.clone(), bound);
        let den_roots = isolate_roots(f.den(), &everywhere, width)?;
        let sf = squarefree_part(f.den());
        let seq = sturm_sequence(&sf);
        for root in den_roots.roots {
            let inside = if root.lower == root.upper {
                interval.contains(&root.lower)
            } else {
                let lo = (&root.lower).max(&interval.lower).clone();
                let hi = (&root.upper).min(&interval.upper).clone();
                lo < hi && count_open(&seq, &lo, &hi) == 1
            };
            poles.push(PoleDiagnostic {
                location: root,
                inside,
            });
        }
    }
    Ok(FutRoots { report, poles })
}

/// `1 + max |a_i / a_n|`, an upper bound on the absolute value of any root.
pub fn cauchy_bound(p: &ParamPoly) -> Rational {
    let lead = p.leading().abs();
    p.coeffs()
        .iter()
        .take(p.coeffs().len().saturating_sub(1))
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero)
        + Rational::one()
}

//! Exact coefficient arithmetic: the polynomial ring Q[λ, x].
//!
//! [`MultiPoly`] is a sparse map from exponent pairs to nonzero rationals.
//! Every operation renormalizes, so two polynomials are equal exactly when
//! their term maps are equal.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalar::{integer, Coefficient, ExactRational};

/// Exponent pair of a monomial λ^lambda · x^x.
///
/// Ordered graded-lexicographically with λ ahead of x: total degree first,
/// then the λ exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub lambda: u32,
    pub x: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { lambda: 0, x: 0 };

    pub fn new(lambda: u32, x: u32) -> Self {
        Monomial { lambda, x }
    }

    pub fn degree(&self) -> u32 {
        self.lambda + self.x
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial {
            lambda: self.lambda + other.lambda,
            x: self.x + other.x,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.lambda.cmp(&other.lambda))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in λ and x with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, ExactRational>,
}

impl MultiPoly {
    pub fn constant(c: ExactRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: ExactRational, lambda: u32, x: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(lambda, x), c);
        }
        MultiPoly { terms }
    }

    /// The indeterminate λ.
    pub fn lambda() -> Self {
        Self::monomial(ExactRational::one(), 1, 0)
    }

    /// The indeterminate x.
    pub fn x() -> Self {
        Self::monomial(ExactRational::one(), 0, 1)
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, ExactRational)>,
    {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ExactRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, lambda: u32, x: u32) -> ExactRational {
        self.terms
            .get(&Monomial::new(lambda, x))
            .cloned()
            .unwrap_or_else(ExactRational::zero)
    }

    /// `Some(c)` when the polynomial is the constant c.
    pub fn as_constant(&self) -> Option<ExactRational> {
        match self.terms.len() {
            0 => Some(ExactRational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.x).max()
    }

    pub fn lambda_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.lambda).max()
    }

    pub fn scale(&self, r: &ExactRational) -> Self {
        if r.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(MultiPoly::one(), |acc, _| acc.mul_ref(self))
    }

    /// Substitute values for λ and/or x, leaving the others symbolic.
    pub fn eval(&self, at_lambda: Option<&ExactRational>, at_x: Option<&ExactRational>) -> Self {
        if at_lambda.is_none() && at_x.is_none() {
            return self.clone();
        }
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = *m;
            if let Some(l) = at_lambda {
                coeff *= num_traits::pow(l.clone(), m.lambda as usize);
                mono.lambda = 0;
            }
            if let Some(v) = at_x {
                coeff *= num_traits::pow(v.clone(), m.x as usize);
                mono.x = 0;
            }
            out.add_term(mono, &coeff);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: &ExactRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }
}

/// Ring product of two polynomials.
pub fn poly_mul(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    a.mul_ref(b)
}

/// Substitute λ and/or x; `None` keeps the indeterminate symbolic.
pub fn poly_eval(
    p: &MultiPoly,
    at_lambda: Option<&ExactRational>,
    at_x: Option<&ExactRational>,
) -> MultiPoly {
    p.eval(at_lambda, at_x)
}

/// Base of a degenerate falling factorial: the symbol x or a fixed rational.
#[derive(Clone, Debug, PartialEq)]
pub enum XArg {
    Symbolic,
    Value(ExactRational),
}

impl XArg {
    pub fn as_poly(&self) -> MultiPoly {
        match self {
            XArg::Symbolic => MultiPoly::x(),
            XArg::Value(v) => MultiPoly::constant(v.clone()),
        }
    }
}

/// (x)_{n,λ} = x(x − λ)(x − 2λ)⋯(x − (n−1)λ), with (x)_{0,λ} = 1.
pub fn falling_factorial_deg(base: &XArg, n: usize) -> MultiPoly {
    let x = base.as_poly();
    let lambda = MultiPoly::lambda();
    (0..n).fold(MultiPoly::one(), |acc, j| {
        let factor = x.clone() - lambda.scale(&integer(j as i64));
        acc.mul_ref(&factor)
    })
}

/// λ^{n−1}(1)_{n,1/λ}, the n-th EGF weight of the degenerate logarithm.
///
/// Computed as the polynomial ∏_{j=1}^{n−1}(λ − j), which never needs 1/λ.
/// Returns 0 for n = 0.
pub fn degenerate_log_weight(n: usize) -> MultiPoly {
    if n == 0 {
        return MultiPoly::zero();
    }
    let lambda = MultiPoly::lambda();
    (1..n).fold(MultiPoly::one(), |acc, j| {
        acc.mul_ref(&(lambda.clone() - MultiPoly::constant(integer(j as i64))))
    })
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::constant(ExactRational::one())
    }
}

impl<'a> AddAssign<&'a MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &'a MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c);
        }
    }
}

impl<'a> SubAssign<&'a MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &'a MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, &-c);
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;

    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;

    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        self -= &rhs;
        self
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        self.mul_ref(&rhs)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.mul_ref(rhs)
    }
}

impl Coefficient for MultiPoly {
    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(*mb), &(ca * cb));
            }
        }
        out
    }

    fn from_rational(r: &ExactRational) -> Self {
        MultiPoly::constant(r.clone())
    }

    fn try_inverse(&self) -> Option<Self> {
        self.as_constant()
            .filter(|c| !c.is_zero())
            .map(|c| MultiPoly::constant(c.recip()))
    }

    fn scale(&self, r: &ExactRational) -> Self {
        MultiPoly::scale(self, r)
    }
}

impl From<ExactRational> for MultiPoly {
    fn from(c: ExactRational) -> Self {
        MultiPoly::constant(c)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (name, e) in [("lambda", m.lambda), ("x", m.x)] {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(name)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Canonical text: terms from highest to lowest graded-lex monomial, `*`
/// for products and `^` for powers, e.g. `lambda^2*x - 3/2*x + 1`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq)]
#[error("cannot parse polynomial `{input}`: {reason}")]
pub struct ParsePolyError {
    input: String,
    reason: String,
}

/// Parses the canonical text produced by `Display` (term order is free).
impl FromStr for MultiPoly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| ParsePolyError {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut out = MultiPoly::zero();
        let mut negate = false;
        let mut expect_term = true;
        for tok in s.split_whitespace() {
            if !expect_term {
                negate = match tok {
                    "+" => false,
                    "-" => true,
                    _ => return Err(fail("expected `+` or `-` between terms")),
                };
                expect_term = true;
                continue;
            }
            let (neg_prefix, body) = match tok.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, tok),
            };
            let mut coeff = ExactRational::one();
            let mut mono = Monomial::ONE;
            for factor in body.split('*') {
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u32>().map_err(|_| fail("bad exponent"))?),
                    None => (factor, 1),
                };
                match name {
                    "lambda" | "λ" => mono.lambda += exp,
                    "x" => mono.x += exp,
                    _ => {
                        let r = ExactRational::from_str(name).map_err(|_| fail("bad coefficient"))?;
                        coeff *= num_traits::pow(r, exp as usize);
                    }
                }
            }
            if negate != neg_prefix {
                coeff = -coeff;
            }
            out.add_term(mono, &coeff);
            expect_term = false;
        }
        if expect_term {
            return Err(fail("dangling operator or empty input"));
        }
        Ok(out)
    }
}

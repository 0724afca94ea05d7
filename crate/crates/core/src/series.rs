//! Truncated formal power series in t.
//!
//! A [`TruncatedSeries`] of order N stores the ordinary coefficients
//! c_0..c_N and stands for that series modulo t^{N+1}. Binary operations on
//! series of different orders truncate to the smaller one.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use thiserror::Error;

use crate::scalar::{factorial, integer, Coefficient, ExactRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("inner series of a composition must have zero constant term")]
    NonZeroConstant,
    #[error("linear coefficient is not invertible in the coefficient ring")]
    NonInvertibleLinear,
    #[error("constant term is not invertible in the coefficient ring")]
    NonInvertibleConstant,
    #[error("operation needs truncation order at least {needed}, got {got}")]
    OrderTooLow { needed: usize, got: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> TruncatedSeries<C> {
    /// Series with the given ordinary coefficients; the order is `len - 1`.
    ///
    /// Panics on an empty vector, which would have no defined order.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c_0");
        TruncatedSeries { coeffs }
    }

    /// Series whose n-th EGF term is `terms[n]`, i.e. c_n = terms[n] / n!.
    pub fn from_egf(terms: Vec<C>) -> Self {
        let coeffs = terms
            .into_iter()
            .enumerate()
            .map(|(n, a)| a.scale(&ExactRational::from_integer(factorial(n)).recip()))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(vec![C::zero(); order + 1])
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    /// The series variable t.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = C::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    /// n! · c_n.
    pub fn egf_term(&self, n: usize) -> C {
        self.coeffs[n].scale(&ExactRational::from_integer(factorial(n)))
    }

    pub fn egf_terms(&self) -> Vec<C> {
        (0..=self.order()).map(|n| self.egf_term(n)).collect()
    }

    /// Drop coefficients above `order`. Never raises the order.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        Self::from_coeffs(self.coeffs[..keep].to_vec())
    }

    // Pads with zeros; only valid where the caller knows the higher
    // coefficients are zero or about to be corrected.
    fn extend(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, C::zero());
        Self::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|a| a.mul_ref(c))
    }

    pub fn scale_rational(&self, r: &ExactRational) -> Self {
        self.map(|a| a.scale(r))
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul_series(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let (a, b) = (&self.coeffs, &rhs.coeffs);
        let out = (0..=order)
            .map(|m| C::sum_products((0..=m).map(|i| (&a[i], &b[m - i]))))
            .collect();
        Self::from_coeffs(out)
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let inv0 = self.coeffs[0]
            .try_inverse()
            .ok_or(SeriesError::NonInvertibleConstant)?;
        let mut out: Vec<C> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..=self.order() {
            let acc = C::sum_products((1..=n).map(|i| (&self.coeffs[i], &out[n - i])));
            out.push(-acc.mul_ref(&inv0));
        }
        Ok(Self::from_coeffs(out))
    }

    /// Termwise derivative; the result has order N − 1.
    pub fn derive(&self) -> Result<Self, SeriesError> {
        if self.order() == 0 {
            return Err(SeriesError::OrderTooLow { needed: 1, got: 0 });
        }
        Ok(Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c.scale(&integer(n as i64)))
                .collect(),
        ))
    }

    /// f ∘ g by Horner's scheme, truncated to the smaller order.
    ///
    /// The Horner accumulator for a_i is later multiplied by g^i, which has
    /// valuation at least i, so it is only carried to order N − i.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonZeroConstant);
        }
        let order = self.order().min(inner.order());
        let mut acc = vec![self.coeffs[order].clone()];
        for i in (0..order).rev() {
            let prec = order - i;
            let mut next = Vec::with_capacity(prec + 1);
            next.push(self.coeffs[i].clone());
            // (g · acc)_m = Σ_{j≥1} g_j acc_{m−j}
            for m in 1..=prec {
                let lo = m.saturating_sub(acc.len() - 1).max(1);
                next.push(C::sum_products((lo..=m).map(|j| (&inner.coeffs[j], &acc[m - j]))));
            }
            acc = next;
        }
        Ok(Self::from_coeffs(acc))
    }

    fn check_revertible(&self) -> Result<C, SeriesError> {
        if self.order() < 1 {
            return Err(SeriesError::OrderTooLow {
                needed: 1,
                got: self.order(),
            });
        }
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonZeroConstant);
        }
        self.coeffs[1]
            .try_inverse()
            .ok_or(SeriesError::NonInvertibleLinear)
    }

    /// Compositional inverse by Newton iteration: g ← g − (f∘g − t)/(f′∘g),
    /// roughly doubling the number of correct coefficients per step.
    ///
    /// f′∘g is obtained as (f∘g)′/g′, so each step costs one composition.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        let linear_inv = self.check_revertible()?;
        let n = self.order();
        let mut g = Self::from_coeffs(vec![C::zero(), linear_inv]);
        let mut known = 1;
        while known < n {
            let target = (2 * known + 1).min(n);
            let g_ext = g.extend(target);
            let fg = self.truncate(target).compose(&g_ext)?;
            let slope = fg
                .derive()?
                .inverse()
                .map_err(|_| SeriesError::NonInvertibleLinear)?
                .mul_series(&g_ext.derive()?);
            let residual = fg - Self::variable(target);
            // residual has valuation > known ≥ 1, so dividing by t is exact.
            let quotient = residual.shift_down().mul_series(&slope);
            g = g_ext - quotient.shift_up();
            known = target;
        }
        Ok(g)
    }

    /// Compositional inverse by Lagrange inversion:
    /// [t^n] g = (1/n) [t^{n−1}] (t / f)^n.
    pub fn revert_lagrange(&self) -> Result<Self, SeriesError> {
        self.check_revertible()?;
        let n = self.order();
        let ratio = self.shift_down().inverse()?; // t/f, order n−1
        let mut out = vec![C::zero(); n + 1];
        let mut power = ratio.clone();
        for (k, slot) in out.iter_mut().enumerate().skip(1) {
            if k > 1 {
                power = power.mul_series(&ratio);
            }
            *slot = power.coeffs[k - 1].scale(&integer(k as i64).recip());
        }
        Ok(Self::from_coeffs(out))
    }

    // f / t for f with zero constant term; order drops by one.
    fn shift_down(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::from_coeffs(self.coeffs[1..].to_vec())
    }

    // t · f; order rises by one.
    fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(C::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(coeffs)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&mut C, &C)) -> Self {
        let order = self.order().min(rhs.order());
        let mut coeffs = self.coeffs[..=order].to_vec();
        for (a, b) in coeffs.iter_mut().zip(&rhs.coeffs) {
            f(a, b);
        }
        Self::from_coeffs(coeffs)
    }
}

pub fn series_mul<C: Coefficient>(f: &TruncatedSeries<C>, g: &TruncatedSeries<C>) -> TruncatedSeries<C> {
    f.mul_series(g)
}

pub fn series_compose<C: Coefficient>(
    f: &TruncatedSeries<C>,
    g: &TruncatedSeries<C>,
) -> Result<TruncatedSeries<C>, SeriesError> {
    f.compose(g)
}

pub fn series_revert<C: Coefficient>(f: &TruncatedSeries<C>) -> Result<TruncatedSeries<C>, SeriesError> {
    f.revert()
}

pub fn series_derive<C: Coefficient>(f: &TruncatedSeries<C>) -> Result<TruncatedSeries<C>, SeriesError> {
    f.derive()
}

pub fn egf_terms<C: Coefficient>(f: &TruncatedSeries<C>) -> Vec<C> {
    f.egf_terms()
}

impl<C: Coefficient> Add for TruncatedSeries<C> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| *a += b)
    }
}

impl<C: Coefficient> Sub for TruncatedSeries<C> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| *a -= b)
    }
}

impl<C: Coefficient> Neg for TruncatedSeries<C> {
    type Output = Self;

    fn neg(self) -> Self {
        TruncatedSeries::from_coeffs(self.coeffs.into_iter().map(Neg::neg).collect())
    }
}

impl<C: Coefficient> Mul for TruncatedSeries<C> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.mul_series(&rhs)
    }
}

impl<C: Coefficient> Mul for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;

    fn mul(self, rhs: Self) -> TruncatedSeries<C> {
        self.mul_series(rhs)
    }
}

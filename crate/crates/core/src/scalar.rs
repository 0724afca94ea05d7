//! Coefficient rings for truncated series.
//!
//! Every series routine is generic over [`Coefficient`]. The two rings the
//! library actually computes in are [`ExactRational`] and
//! [`MultiPoly`](crate::ring::MultiPoly); both are exact, so equality of
//! results is mathematical equality.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type ExactRational = BigRational;

/// A commutative ring with unit that can absorb rationals.
///
/// `mul_ref` exists so that hot loops do not have to clone both operands.
pub trait Coefficient:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn mul_ref(&self, rhs: &Self) -> Self;

    fn from_rational(r: &ExactRational) -> Self;

    /// Multiplicative inverse when it exists in the ring.
    fn try_inverse(&self) -> Option<Self>;

    fn from_integer(n: i64) -> Self {
        Self::from_rational(&ExactRational::from_integer(BigInt::from(n)))
    }

    fn scale(&self, r: &ExactRational) -> Self {
        self.mul_ref(&Self::from_rational(r))
    }

    /// Σ a·b over the pairs, skipping pairs with a zero factor.
    fn sum_products<'a, I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (&'a Self, &'a Self)>,
        Self: 'a,
    {
        let mut acc = Self::zero();
        for (a, b) in pairs {
            if !a.is_zero() && !b.is_zero() {
                acc += &a.mul_ref(b);
            }
        }
        acc
    }
}

impl Coefficient for BigRational {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn from_rational(r: &ExactRational) -> Self {
        r.clone()
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn scale(&self, r: &ExactRational) -> Self {
        self * r
    }

    /// Accumulates over the running lcm of the denominators and reduces once
    /// at the end, instead of normalizing after every product and sum.
    fn sum_products<'a, I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (&'a Self, &'a Self)>,
    {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (a, b) in pairs {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let p = a.numer() * b.numer();
            let q = a.denom() * b.denom();
            let g = den.gcd(&q);
            if g.is_one() {
                num = num * &q + p * &den;
                den *= q;
            } else {
                let q = q / &g;
                num = num * &q + p * (&den / g);
                den *= q;
            }
        }
        BigRational::new(num, den)
    }
}

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn rational(num: i64, den: i64) -> ExactRational {
    ExactRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n))
}

/// n! as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// (-1)^n as a rational.
pub fn sign(n: usize) -> ExactRational {
    if n.is_multiple_of(2) {
        ExactRational::one()
    } else {
        -ExactRational::one()
    }
}

/// n^e for an integer exponent of either sign; n must be nonzero when e < 0.
pub fn int_pow(n: usize, e: i64) -> ExactRational {
    let base = integer(n as i64);
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base, e.unsigned_abs() as usize).recip()
    }
}

//! Exact computation of Bell-type polynomial families of the second kind,
//! their degenerate and polylogarithmic variants, and the identities they
//! satisfy.
//!
//! Coefficients live in [`ExactRational`] or in the polynomial ring
//! [`MultiPoly`] = Q[λ, x]. Generating functions are [`TruncatedSeries`]
//! values, generic over the coefficient ring.

pub mod bell;
pub mod ring;
pub mod scalar;
pub mod series;
pub mod special;
pub mod verify;

pub use ring::{MultiPoly, XArg};
pub use scalar::{Coefficient, ExactRational};
pub use series::{SeriesError, TruncatedSeries};

/// Series with rational coefficients.
pub type RationalSeries = TruncatedSeries<ExactRational>;
/// Series with coefficients in Q[λ, x].
pub type PolySeries = TruncatedSeries<MultiPoly>;

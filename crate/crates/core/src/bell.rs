//! Bell-type polynomial families.
//!
//! Each family is available two ways: as a closed-form sum over a Stirling
//! table ([`BellFamily::explicit_values`]) and as n! [t^n] of its generating
//! function ([`BellFamily::gf_values`]). The per-n entry points below compute
//! both and refuse to answer if they disagree.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::ring::{degenerate_log_weight, falling_factorial_deg, MultiPoly, XArg};
use crate::scalar::{factorial, int_pow, sign, Coefficient, ExactRational};
use crate::series::{SeriesError, TruncatedSeries};
use crate::special::{
    classical_stirling, deg_exp, deg_exp_minus_one, deg_log1p, deg_polylog, degenerate_stirling,
    exp_minus_one, exp_series, log1p, polylog, unsigned_first_kind, StirlingKind,
};
use crate::{PolySeries, RationalSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BellFamily {
    /// Bel_n(x), EGF e^{x(e^t − 1)}.
    ClassicalBell,
    /// Bel_{n,λ}(x), EGF e_λ^x(e_λ(t) − 1).
    DegBell,
    /// bel_n(x), EGF log(1 + x log(1 + t)).
    Bell2,
    /// bel_{n,λ}(x), EGF log_λ(1 + x log_λ(1 + t)).
    DegBell2,
    /// bel_n^{(k)}(x), EGF Li_k(−x log(1 − t)).
    PolyBell2 { k: i64 },
    /// bel_{n,λ}^{(k)}(x), EGF Li_{k,λ}(−x log_λ(1 − t)).
    DegPolyBell2 { k: i64 },
}

impl BellFamily {
    pub const NAMES: [&'static str; 6] = [
        "classical_bell",
        "deg_bell",
        "bell2",
        "deg_bell2",
        "poly_bell2",
        "deg_poly_bell2",
    ];

    /// Looks a family up by name; poly families need `k`, the others refuse it.
    pub fn from_name(name: &str, k: Option<i64>) -> Result<Self, BellError> {
        let name = name.replace('-', "_");
        let family = match (name.as_str(), k) {
            ("classical_bell" | "bell", None) => BellFamily::ClassicalBell,
            ("deg_bell", None) => BellFamily::DegBell,
            ("bell2", None) => BellFamily::Bell2,
            ("deg_bell2", None) => BellFamily::DegBell2,
            ("poly_bell2", Some(k)) => BellFamily::PolyBell2 { k },
            ("deg_poly_bell2", Some(k)) => BellFamily::DegPolyBell2 { k },
            ("poly_bell2" | "deg_poly_bell2", None) => {
                return Err(BellError::PolyIndex {
                    family: name,
                    needed: true,
                })
            }
            (n, Some(_)) if Self::NAMES.contains(&n) || n == "bell" => {
                return Err(BellError::PolyIndex {
                    family: name,
                    needed: false,
                })
            }
            _ => return Err(BellError::UnknownFamily(name)),
        };
        Ok(family)
    }

    pub fn name(&self) -> &'static str {
        match self {
            BellFamily::ClassicalBell => "classical_bell",
            BellFamily::DegBell => "deg_bell",
            BellFamily::Bell2 => "bell2",
            BellFamily::DegBell2 => "deg_bell2",
            BellFamily::PolyBell2 { .. } => "poly_bell2",
            BellFamily::DegPolyBell2 { .. } => "deg_poly_bell2",
        }
    }

    pub fn poly_index(&self) -> Option<i64> {
        match *self {
            BellFamily::PolyBell2 { k } | BellFamily::DegPolyBell2 { k } => Some(k),
            _ => None,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            BellFamily::DegBell | BellFamily::DegBell2 | BellFamily::DegPolyBell2 { .. }
        )
    }

    /// Degenerate family → its λ = 0 counterpart; classical families map to themselves.
    pub fn classical_counterpart(&self) -> BellFamily {
        match *self {
            BellFamily::DegBell => BellFamily::ClassicalBell,
            BellFamily::DegBell2 => BellFamily::Bell2,
            BellFamily::DegPolyBell2 { k } => BellFamily::PolyBell2 { k },
            other => other,
        }
    }

    /// Smallest valid index: 0 for Bel_n, 1 for every second-kind family.
    pub fn first_index(&self) -> usize {
        match self {
            BellFamily::ClassicalBell | BellFamily::DegBell => 0,
            _ => 1,
        }
    }

    fn check_index(&self, n: usize) -> Result<(), BellError> {
        if n < self.first_index() {
            return Err(BellError::IndexStartsAtOne { family: *self });
        }
        Ok(())
    }

    /// The family's exponential generating function in t, to the given order.
    pub fn generating_function(&self, order: usize) -> Result<PolySeries, SeriesError> {
        let x = MultiPoly::x();
        match *self {
            BellFamily::ClassicalBell => {
                let inner = exp_minus_one::<MultiPoly>(order).scale(&x);
                exp_series::<MultiPoly>(order).compose(&inner)
            }
            BellFamily::DegBell => deg_exp(&XArg::Symbolic, order).compose(&deg_exp_minus_one(order)),
            BellFamily::Bell2 => {
                let inner = log1p::<MultiPoly>(order).scale(&x);
                log1p::<MultiPoly>(order).compose(&inner)
            }
            BellFamily::DegBell2 => {
                let inner = deg_log1p(order).scale(&x);
                deg_log1p(order).compose(&inner)
            }
            BellFamily::PolyBell2 { k } => {
                // −x log(1 − t)
                let neg_t = TruncatedSeries::variable(order).scale(&-MultiPoly::one());
                let inner = log1p::<MultiPoly>(order).compose(&neg_t)?.scale(&-x);
                polylog::<MultiPoly>(k, order).compose(&inner)
            }
            BellFamily::DegPolyBell2 { k } => {
                let neg_t = TruncatedSeries::variable(order).scale(&-MultiPoly::one());
                let inner = deg_log1p(order).compose(&neg_t)?.scale(&-x);
                deg_polylog(k, order).compose(&inner)
            }
        }
    }

    /// Values n! [t^n] GF for first_index ≤ n ≤ max_n.
    pub fn gf_values(&self, max_n: usize) -> Result<Vec<BellValue>, SeriesError> {
        let gf = self.generating_function(max_n)?;
        Ok((self.first_index()..=max_n)
            .map(|n| BellValue {
                family: *self,
                n,
                value: gf.egf_term(n),
            })
            .collect())
    }

    /// Closed-form Stirling sums for first_index ≤ n ≤ max_n.
    pub fn explicit_values(&self, max_n: usize) -> Vec<BellValue> {
        let range = self.first_index()..=max_n;
        let x_pow = |l: usize| MultiPoly::x().pow(l as u32);
        let values: Vec<MultiPoly> = match *self {
            BellFamily::ClassicalBell => {
                let s2 = classical_stirling(StirlingKind::Second, max_n);
                range
                    .map(|n| sum((0..=n).map(|k| x_pow(k).scale(&s2.get(n, k)))))
                    .collect()
            }
            BellFamily::DegBell => {
                let s2 = degenerate_stirling(StirlingKind::Second, max_n);
                range
                    .map(|n| {
                        sum((0..=n).map(|k| s2.get(n, k).mul_ref(&falling_factorial_deg(&XArg::Symbolic, k))))
                    })
                    .collect()
            }
            BellFamily::Bell2 => {
                let s1 = classical_stirling(StirlingKind::First, max_n);
                range
                    .map(|n| {
                        sum((1..=n).map(|k| {
                            let w =
                                sign(k - 1) * ExactRational::from_integer(factorial(k - 1)) * s1.get(n, k);
                            x_pow(k).scale(&w)
                        }))
                    })
                    .collect()
            }
            BellFamily::DegBell2 => {
                let s1 = degenerate_stirling(StirlingKind::First, max_n);
                range
                    .map(|n| {
                        sum((1..=n)
                            .map(|k| degenerate_log_weight(k).mul_ref(&s1.get(n, k)).mul_ref(&x_pow(k))))
                    })
                    .collect()
            }
            BellFamily::PolyBell2 { k } => {
                let s1 = classical_stirling(StirlingKind::First, max_n);
                range
                    .map(|n| {
                        sum((1..=n).map(|l| {
                            let w = int_pow(l, 1 - k)
                                * ExactRational::from_integer(factorial(l - 1))
                                * unsigned_first_kind(&s1, n, l);
                            x_pow(l).scale(&w)
                        }))
                    })
                    .collect()
            }
            BellFamily::DegPolyBell2 { k } => {
                let s1 = degenerate_stirling(StirlingKind::First, max_n);
                range
                    .map(|n| {
                        let signed = sum((1..=n).map(|l| {
                            degenerate_log_weight(l)
                                .mul_ref(&s1.get(n, l))
                                .mul_ref(&x_pow(l))
                                .scale(&int_pow(l, 1 - k))
                        }));
                        signed.scale(&sign(n - 1))
                    })
                    .collect()
            }
        };
        values
            .into_iter()
            .enumerate()
            .map(|(i, value)| BellValue {
                family: *self,
                n: self.first_index() + i,
                value,
            })
            .collect()
    }

    /// One value by the closed form, cross-checked against the generating function.
    pub fn value(&self, n: usize) -> Result<BellValue, BellError> {
        self.check_index(n)?;
        let explicit = self.explicit_values(n).pop().expect("range includes n");
        let from_gf = self.generating_function(n)?.egf_term(n);
        if explicit.value != from_gf {
            return Err(BellError::PathMismatch {
                family: *self,
                n,
                explicit: explicit.value,
                generating: from_gf,
            });
        }
        Ok(explicit)
    }

    /// Checks closed form against generating function for every n ≤ max_n.
    pub fn dual_path_check(&self, max_n: usize) -> Result<(), BellError> {
        let explicit = self.explicit_values(max_n);
        let gf = self.gf_values(max_n)?;
        for (a, b) in explicit.into_iter().zip(gf) {
            if a.value != b.value {
                return Err(BellError::PathMismatch {
                    family: *self,
                    n: a.n,
                    explicit: a.value,
                    generating: b.value,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for BellFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.poly_index() {
            Some(k) => write!(f, "{}[k={k}]", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

impl FromStr for BellFamily {
    type Err = BellError;

    /// Accepts `bell2`, `deg-bell2`, or `poly_bell2:3` style names.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            Some((name, k)) => {
                let k = k.parse().map_err(|_| BellError::UnknownFamily(s.to_string()))?;
                Self::from_name(name, Some(k))
            }
            None => Self::from_name(s, None),
        }
    }
}

fn sum(items: impl Iterator<Item = MultiPoly>) -> MultiPoly {
    items.fold(MultiPoly::zero(), |mut acc, p| {
        acc += &p;
        acc
    })
}

/// The n-th member of a family, a polynomial in x (and λ when degenerate).
#[derive(Clone, Debug, PartialEq)]
pub struct BellValue {
    pub family: BellFamily,
    pub n: usize,
    pub value: MultiPoly,
}

impl BellValue {
    /// The number variant: the value at x = 1.
    pub fn number(&self) -> MultiPoly {
        self.value.eval(None, Some(&ExactRational::one()))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BellError {
    #[error("{family} starts at n = 1")]
    IndexStartsAtOne { family: BellFamily },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("family `{family}` {}", if *.needed { "needs a poly index k" } else { "takes no poly index" })]
    PolyIndex { family: String, needed: bool },
    #[error("{family} at n = {n}: closed form {explicit} differs from generating function {generating}")]
    PathMismatch {
        family: BellFamily,
        n: usize,
        explicit: MultiPoly,
        generating: MultiPoly,
    },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Bel_n(x) = Σ_k S_2(n, k) x^k.
pub fn bell_poly(n: usize) -> Result<BellValue, BellError> {
    BellFamily::ClassicalBell.value(n)
}

/// Bel_{n,λ}(x) = Σ_k S_{2,λ}(n, k) (x)_{k,λ}.
pub fn deg_bell_poly(n: usize) -> Result<BellValue, BellError> {
    BellFamily::DegBell.value(n)
}

/// bel_n(x) = Σ_{k=1}^n (−1)^{k−1} (k−1)! S_1(n, k) x^k.
pub fn bell2_poly(n: usize) -> Result<BellValue, BellError> {
    BellFamily::Bell2.value(n)
}

/// bel_{n,λ}(x) = Σ_{k=1}^n λ^{k−1}(1)_{k,1/λ} S_{1,λ}(n, k) x^k.
pub fn deg_bell2_poly(n: usize) -> Result<BellValue, BellError> {
    BellFamily::DegBell2.value(n)
}

/// bel_n^{(k)}(x) = Σ_{l=1}^n x^l / l^{k−1} · (l−1)! |S_1(n, l)|.
pub fn poly_bell2(n: usize, k: i64) -> Result<BellValue, BellError> {
    BellFamily::PolyBell2 { k }.value(n)
}

/// bel_{n,λ}^{(k)}(x) = (−1)^{n−1} Σ_{l=1}^n λ^{l−1}(1)_{l,1/λ} x^l S_{1,λ}(n, l) / l^{k−1}.
pub fn deg_poly_bell2(n: usize, k: i64) -> Result<BellValue, BellError> {
    BellFamily::DegPolyBell2 { k }.value(n)
}

/// e^{e^t − 1} − 1, whose EGF terms are the Bell numbers from n = 1.
pub fn bell_number_series(order: usize) -> RationalSeries {
    let e = exp_series::<ExactRational>(order)
        .compose(&exp_minus_one(order))
        .expect("e^t − 1 has zero constant term");
    e - TruncatedSeries::one(order)
}

/// e_λ(e_λ(t) − 1) − 1.
pub fn deg_bell_number_series(order: usize) -> PolySeries {
    let one = XArg::Value(ExactRational::one());
    let e = deg_exp(&one, order)
        .compose(&deg_exp_minus_one(order))
        .expect("e_λ(t) − 1 has zero constant term");
    e - TruncatedSeries::one(order)
}

/// Compositional inverse of [`bell_number_series`]; its EGF terms are bel_n.
pub fn bell2_number_series(order: usize) -> Result<RationalSeries, SeriesError> {
    bell_number_series(order).revert()
}

/// Compositional inverse of [`deg_bell_number_series`]; EGF terms are bel_{n,λ}.
pub fn deg_bell2_number_series(order: usize) -> Result<PolySeries, SeriesError> {
    deg_bell_number_series(order).revert()
}

/// (−1)^{n−1} Σ_{k=1}^n (k−1)! [n k], with [n k] the unsigned first-kind numbers.
pub fn bell2_number_by_stirling(n: usize) -> ExactRational {
    let s1 = classical_stirling(StirlingKind::First, n);
    let total = (1..=n).fold(ExactRational::zero(), |acc, k| {
        acc + ExactRational::from_integer(factorial(k - 1)) * unsigned_first_kind(&s1, n, k)
    });
    sign(n.saturating_sub(1)) * total
}

/// bel_n, by the unsigned Stirling sum and by reverting the Bell-number EGF.
pub fn bell2_number(n: usize) -> Result<BellValue, BellError> {
    let family = BellFamily::Bell2;
    family.check_index(n)?;
    let by_sum = bell2_number_by_stirling(n);
    let by_reversion = bell2_number_series(n)?.egf_term(n);
    if by_sum != by_reversion {
        return Err(BellError::PathMismatch {
            family,
            n,
            explicit: MultiPoly::constant(by_sum),
            generating: MultiPoly::constant(by_reversion),
        });
    }
    Ok(BellValue {
        family,
        n,
        value: MultiPoly::constant(by_sum),
    })
}

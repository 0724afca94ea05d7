//! Exact machine checks of the second-kind Bell identities.
//!
//! Each [`TheoremId`] binds to one procedure that builds both sides of an
//! identity as polynomials in x (and λ) for every n up to `max_n`, compares
//! them structurally, and stops at the first disagreement.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::bell::{bell2_number_series, deg_bell2_number_series, BellError, BellFamily};
use crate::ring::{degenerate_log_weight, MultiPoly};
use crate::scalar::{factorial, int_pow, integer, sign, Coefficient, ExactRational};
use crate::series::{SeriesError, TruncatedSeries};
use crate::special::{
    classical_stirling, deg_log1p, degenerate_stirling, derangements, exp_minus_one, exp_series, log1p,
    stirling_table, unsigned_first_kind, StirlingKind,
};
use crate::PolySeries;

/// Default truncation for identities over Q[x].
pub const CLASSICAL_MAX_N: usize = 12;
/// Default truncation for identities that carry λ symbolically.
pub const DEGENERATE_MAX_N: usize = 8;
/// Default poly index range for the polylogarithm identities.
pub const DEFAULT_K_RANGE: RangeInclusive<i64> = -1..=3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10,
    T11,
    /// T6 with λ^{1−n}/(1)_{n,1/λ} in place of λ^{n−1}(1)_{n,1/λ}; fails at n = 2.
    T6AsPrinted,
    Eq20To22Chain,
    ReduceLambda0,
    ReduceK1,
    ReversionDuality,
}

impl TheoremId {
    /// Everything `check_all` runs. Excludes [`TheoremId::T6AsPrinted`].
    pub const ALL: [TheoremId; 15] = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::T5,
        TheoremId::T6,
        TheoremId::T7,
        TheoremId::T8,
        TheoremId::T9,
        TheoremId::T10,
        TheoremId::T11,
        TheoremId::Eq20To22Chain,
        TheoremId::ReduceLambda0,
        TheoremId::ReduceK1,
        TheoremId::ReversionDuality,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TheoremId::T1 => "T1",
            TheoremId::T2 => "T2",
            TheoremId::T3 => "T3",
            TheoremId::T4 => "T4",
            TheoremId::T5 => "T5",
            TheoremId::T6 => "T6",
            TheoremId::T7 => "T7",
            TheoremId::T8 => "T8",
            TheoremId::T9 => "T9",
            TheoremId::T10 => "T10",
            TheoremId::T11 => "T11",
            TheoremId::T6AsPrinted => "T6_as_printed",
            TheoremId::Eq20To22Chain => "EQ20_22_chain",
            TheoremId::ReduceLambda0 => "REDUCE_LAMBDA0",
            TheoremId::ReduceK1 => "REDUCE_K1",
            TheoremId::ReversionDuality => "REVERSION_DUALITY",
        }
    }

    /// One-line statement of what the check compares.
    pub fn statement(&self) -> &'static str {
        match self {
            TheoremId::T1 => "(-1)^(n-1) bel_n = sum_k (k-1)! |S1(n,k)|",
            TheoremId::T2 => "sum_k bel_{k+1}(-1) S2(n,k) = -d_n",
            TheoremId::T3 => "sum_j sum_k bel_k S2(j,k) S2(n,j) = [n = 1], bel_1 = 1",
            TheoremId::T4 => "x^n = (-1)^(n-1)/(n-1)! sum_k bel_k(x) S2(n,k)",
            TheoremId::T5 => "bel_{n,lambda} = sum_k lambda^(k-1)(1)_{k,1/lambda} S1_lambda(n,k)",
            TheoremId::T6 => "x^n lambda^(n-1)(1)_{n,1/lambda} = sum_k bel_{k,lambda}(x) S2_lambda(n,k)",
            TheoremId::T7 => "sum_j sum_k bel_{k,lambda} S2_lambda(j,k) S2_lambda(n,j) = [n = 1], bel_{1,lambda} = 1",
            TheoremId::T8 => "bel_n^(k)(x) = sum_l x^l/l^(k-1) (l-1)! |S1(n,l)|",
            TheoremId::T9 => "x^n = n^(k-1)/(n-1)! sum_l (-1)^(n-l) bel_l^(k)(x) S2(n,l)",
            TheoremId::T10 => "(-1)^(n-1) bel_{n,lambda}^(k)(x) = sum_l (1)_{l,1/lambda} lambda^(l-1) x^l S1_lambda(n,l) / l^(k-1)",
            TheoremId::T11 => "(-lambda)^(n-1)(1)_{n,1/lambda} x^n / n^(k-1) = sum_l (-1)^(n-l) bel_{l,lambda}^(k)(x) S2_lambda(n,l)",
            TheoremId::T6AsPrinted => "x^n lambda^(1-n)/(1)_{n,1/lambda} = sum_k bel_{k,lambda}(x) S2_lambda(n,k)",
            TheoremId::Eq20To22Chain => "d/dt log(1+x log(1+t)) at t -> e^t-1 equals x e^(-t)/(1+xt); at x=-1 equals -e^(-t)/(1-t)",
            TheoremId::ReduceLambda0 => "lambda = 0 sends every degenerate family and table to its classical counterpart",
            TheoremId::ReduceK1 => "bel_n^(1)(x) = (-1)^(n-1) bel_n(x) and (-1)^(n-1) bel_{n,lambda}^(1)(x) = bel_{n,lambda}(x)",
            TheoremId::ReversionDuality => "revert(e^(e^t-1)-1) = log(1+log(1+t)); degenerate analogue",
        }
    }

    pub fn needs_k_range(&self) -> bool {
        matches!(
            self,
            TheoremId::T8 | TheoremId::T9 | TheoremId::T10 | TheoremId::T11
        )
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            TheoremId::T5
                | TheoremId::T6
                | TheoremId::T6AsPrinted
                | TheoremId::T7
                | TheoremId::T10
                | TheoremId::T11
                | TheoremId::ReduceLambda0
        )
    }

    pub fn default_max_n(&self) -> usize {
        match self {
            TheoremId::T3 | TheoremId::T4 | TheoremId::T9 | TheoremId::ReduceK1 => 10,
            id if id.is_degenerate() => DEGENERATE_MAX_N,
            _ => CLASSICAL_MAX_N,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .iter()
            .chain(std::iter::once(&TheoremId::T6AsPrinted))
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .copied()
            .ok_or_else(|| VerifyError::UnknownTheorem(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

/// First failing case of a check; sides are rendered in canonical text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub n: usize,
    pub k: Option<i64>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub max_n: usize,
    pub k_range: Option<RangeInclusive<i64>>,
    pub status: Status,
    pub counterexample: Option<Counterexample>,
    /// Number of (n, k) instances compared before stopping.
    pub cases: usize,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("{0} needs a poly index range (--k-range A..B)")]
    MissingKRange(TheoremId),
    #[error("{0} was given an empty poly index range")]
    EmptyKRange(TheoremId),
    #[error("max_n must be at least 1")]
    MaxNTooSmall,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Bell(#[from] BellError),
}

/// Running comparison of lhs/rhs pairs; remembers only the first failure.
#[derive(Default)]
struct Tally {
    cases: usize,
    failure: Option<Counterexample>,
    notes: Vec<String>,
}

impl Tally {
    /// Records one instance; returns false once a mismatch has been seen.
    fn compare(&mut self, n: usize, k: Option<i64>, lhs: &MultiPoly, rhs: &MultiPoly) -> bool {
        if self.failure.is_some() {
            return false;
        }
        self.cases += 1;
        if lhs != rhs {
            self.failure = Some(Counterexample {
                n,
                k,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
            return false;
        }
        true
    }

    fn failed(&self) -> bool {
        self.failure.is_some()
    }
}

fn q(c: ExactRational) -> MultiPoly {
    MultiPoly::constant(c)
}

fn x_pow(n: usize) -> MultiPoly {
    MultiPoly::x().pow(n as u32)
}

fn fact(n: usize) -> ExactRational {
    ExactRational::from_integer(factorial(n))
}

fn poly_sum(items: impl Iterator<Item = MultiPoly>) -> MultiPoly {
    items.fold(MultiPoly::zero(), |mut acc, p| {
        acc += &p;
        acc
    })
}

/// GF-path values of a family, indexed by n (index 0 is zero for second-kind families).
fn gf_table(family: BellFamily, max_n: usize) -> Result<Vec<MultiPoly>, SeriesError> {
    Ok(family.generating_function(max_n)?.egf_terms())
}

/// Checks one identity for 1 ≤ n ≤ max_n (n from 0 where the identity starts there).
pub fn check(
    theorem: TheoremId,
    max_n: usize,
    k_range: Option<RangeInclusive<i64>>,
) -> Result<VerificationReport, VerifyError> {
    if max_n < 1 {
        return Err(VerifyError::MaxNTooSmall);
    }
    if theorem.needs_k_range() {
        match &k_range {
            None => return Err(VerifyError::MissingKRange(theorem)),
            Some(r) if r.is_empty() => return Err(VerifyError::EmptyKRange(theorem)),
            _ => {}
        }
    }
    let start = Instant::now();
    let mut tally = Tally::default();
    let ks = k_range.clone().unwrap_or(DEFAULT_K_RANGE);
    match theorem {
        TheoremId::T1 => check_t1(&mut tally, max_n)?,
        TheoremId::T2 => check_t2(&mut tally, max_n)?,
        TheoremId::T3 => check_t3(&mut tally, max_n)?,
        TheoremId::T4 => check_t4(&mut tally, max_n)?,
        TheoremId::T5 => check_t5(&mut tally, max_n)?,
        TheoremId::T6 => check_t6(&mut tally, max_n, false)?,
        TheoremId::T6AsPrinted => check_t6(&mut tally, max_n, true)?,
        TheoremId::T7 => check_t7(&mut tally, max_n)?,
        TheoremId::T8 => check_t8(&mut tally, max_n, ks)?,
        TheoremId::T9 => check_t9(&mut tally, max_n, ks)?,
        TheoremId::T10 => check_t10(&mut tally, max_n, ks)?,
        TheoremId::T11 => check_t11(&mut tally, max_n, ks)?,
        TheoremId::Eq20To22Chain => check_chain(&mut tally, max_n)?,
        TheoremId::ReduceLambda0 => check_lambda_zero(&mut tally, max_n, ks)?,
        TheoremId::ReduceK1 => check_k_one(&mut tally, max_n)?,
        TheoremId::ReversionDuality => check_reversion(&mut tally, max_n)?,
    }
    let status = if tally.failed() {
        Status::Fail
    } else {
        Status::Pass
    };
    Ok(VerificationReport {
        theorem,
        max_n,
        k_range: if theorem.needs_k_range() || theorem == TheoremId::ReduceLambda0 {
            k_range.or(Some(DEFAULT_K_RANGE))
        } else {
            None
        },
        status,
        counterexample: tally.failure,
        cases: tally.cases,
        notes: tally.notes,
        elapsed: start.elapsed(),
    })
}

/// Runs every id in [`TheoremId::ALL`], concurrently, reporting in id order.
///
/// `max_n = None` uses each theorem's default truncation.
pub fn check_all(
    max_n: Option<usize>,
    k_range: Option<RangeInclusive<i64>>,
) -> Vec<Result<VerificationReport, VerifyError>> {
    check_many(&TheoremId::ALL, max_n, k_range)
}

/// Like [`check_all`] for an explicit list of ids; output follows input order.
pub fn check_many(
    ids: &[TheoremId],
    max_n: Option<usize>,
    k_range: Option<RangeInclusive<i64>>,
) -> Vec<Result<VerificationReport, VerifyError>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = ids
            .iter()
            .map(|&id| {
                let ks = k_range.clone();
                scope.spawn(move || check(id, max_n.unwrap_or_else(|| id.default_max_n()), ks))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("theorem check panicked"))
            .collect()
    })
}

fn check_t1(tally: &mut Tally, max_n: usize) -> Result<(), VerifyError> {
    let bel = bell2_number_series(max_n)?.egf_terms();
    let s1 = classical_stirling(StirlingKind::First, max_n);
    for n in 1..=max_n {
        let lhs = sign(n - 1) * bel[n].clone();
        let rhs: ExactRational = (1..=n)
            .map(|k| fact(k - 1) * unsigned_first_kind(&s1, n, k))
            .sum();
        if !tally.compare(n, None, &q(lhs), &q(rhs)) {
            break;
        }
    }
    Ok(())
}

fn check_t2(tally: &mut Tally, max_n: usize) -> Result<(), VerifyError> {
    let minus_one = integer(-1);
    let bel: Vec<ExactRational> = gf_table(BellFamily::Bell2, max_n + 1)?
        .iter()
        .map(|p| {
            p.eval(None, Some(&minus_one))
                .as_constant()
                .expect("x substituted")
        })
        .collect();
    let s2 = classical_stirling(StirlingKind::Second, max_n);
    let d = derangements(max_n);
    for n in 0..=max_n {
        let lhs: ExactRational = (0..=n).map(|k| bel[k + 1].clone() * s2.get(n, k)).sum();
        let rhs = -ExactRational::from_integer(d.values[n].clone());
        if !tally.compare(n, None, &q(lhs), &q(rhs)) {
            break;
        }
    }
    Ok(())
}

fn vanishing_double_sum<C: Coefficient>(
    tally: &mut Tally,
    max_n: usize,
    bel: &[C],
    s2: &crate::special::StirlingTable<C>,
    lift: impl Fn(&C) -> MultiPoly,
) {
    if !tally.compare(1, None, &lift(&bel[1]), &MultiPoly::one()) {
        return;
    }
    for n in 1..=max_n {
        let mut total = C::zero();
        for j in 1..=n {
            let inner = (1..=j).fold(C::zero(), |mut acc, k| {
                acc += &bel[k].mul_ref(&s2.get(j, k));
                acc
            });
            total += &inner.mul_ref(&s2.get(n, j));
        }
        let expected = if n == 1 {
            MultiPoly::one()
        } else {
            MultiPoly::zero()
        };
        if !tally.compare(n, None, &lift(&total), &expected) {
            return;
        }
    }
}

fn check_t3(tally: &mut Tally, max_n: usize) -> Result<(), VerifyError> {
    let bel = bell2_number_series(max_n)?.egf_terms();
    let s2 = classical_stirling(StirlingKind::Second, max_n);
    vanishing_double_sum(tally, max_n, &bel, &s2, |c| q(c.clone()));
    if !tally.failed() {
        tally.notes.push(format!("bel_1 = {}", bel[1]));
    }
    Ok(())
}

fn check_t4(tally: &mut Tally, max_n: usize) -> Result<(), VerifyError> {
    let bel = gf_table(BellFamily::Bell2, max_n)?;
    let s2 = classical_stirling(StirlingKind::Second, max_n);
    for n in 1..=max_n {
        let sum = poly_sum((1..=n).map(|k| bel[k].scale(&s2.get(n, k))));
        let rhs = sum.scale(&(sign(n - 1) / fact(n - 1)));
        if !tally.compare(n, None, &x_pow(n), &rhs) {
            break;
        }
    }
    Ok(())
}

fn check_t5(tally: &mut Tally, max_n: usize) -> Result<(), VerifyError> {
    let bel = deg_bell2_number_series(max_n)?.egf_terms();
    let s1 = degenerate_stirling(StirlingKind::First, max_n);
    for n in 1..=max_n {
        let rhs = poly_sum((1..=n).map(|k| degenerate_log_weight(k).mul_ref(&s1.get(n, k))));
        if !tally.compare(n, None, &bel[n], &rhs) {
            break;
        }
    }
    Ok(())
}

// The corrected form multiplies x^n by λ^{n−1}(1)_{n,1/λ}. The typeset
// form has x^n times its reciprocal; both sides are multiplied through by
// λ^{n−1}(1)_{n,1/λ} so the comparison stays polynomial.
fn check_t6(tally: &mut Tally, max_n: usize, as_printed: bool) -> Result<(), VerifyError> {
    let bel = gf_table(BellFamily::DegBell2, max_n)?;
    let s2 = degenerate_stirling(StirlingKind::Second, max_n);
    for n in 1..=max_n {
        let weight = degenerate_log_weight(n);
        let sum = poly_sum((1..=n).map(|k| bel[k].mul_ref(&s2.get(n, k))));
        let (lhs, rhs) = if as_printed {
            (x_pow(n), sum.mul_ref(&weight))
        } else {
            (x_pow(n).mul_ref(&weight), sum)
        };
        if !tally.compare(n, None, &lhs, &rhs) {
            break;
        }
    }
    Ok(())
}

fn check_t7(tally: &mut Tally, max_n: usize) -> Result<(), VerifyError> {
    let bel = deg_bell2_number_series(max_n)?.egf_terms();
    let s2 = degenerate_stirling(StirlingKind::Second, max_n);
    vanishing_double_sum(tally, max_n, &bel, &s2, MultiPoly::clone);
    if !tally.failed() {
        tally.notes.push(format!("bel_1,lambda = {}", bel[1]));
    }
    Ok(())
}

fn check_t8(tally: &mut Tally, max_n: usize, ks: RangeInclusive<i64>) -> Result<(), VerifyError> {
    let s1 = classical_stirling(StirlingKind::First, max_n);
    for k in ks {
        let bel = gf_table(BellFamily::PolyBell2 { k }, max_n)?;
        for n in 1..=max_n {
            let rhs = poly_sum((1..=n).map(|l| {
                x_pow(l).scale(&(int_pow(l, 1 - k) * fact(l - 1) * unsigned_first_kind(&s1, n, l)))
            }));
            if !tally.compare(n, Some(k), &bel[n], &rhs) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn check_t9(tally: &mut Tally, max_n: usize, ks: RangeInclusive<i64>) -> Result<(), VerifyError> {
    let s2 = classical_stirling(StirlingKind::Second, max_n);
    for k in ks {
        let bel = gf_table(BellFamily::PolyBell2 { k }, max_n)?;
        for n in 1..=max_n {
            let sum = poly_sum((1..=n).map(|l| bel[l].scale(&(sign(n - l) * s2.get(n, l)))));
            let rhs = sum.scale(&(int_pow(n, k - 1) / fact(n - 1)));
            if !tally.compare(n, Some(k), &x_pow(n), &rhs) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn check_t10(tally: &mut Tally, max_n: usize, ks: RangeInclusive<i64>) -> Result<(), VerifyError> {
    let s1 = degenerate_stirling(StirlingKind::First, max_n);
    for k in ks {
        let bel = gf_table(BellFamily::DegPolyBell2 { k }, max_n)?;
        for n in 1..=max_n {
            let lhs = bel[n].scale(&sign(n - 1));
            let rhs = poly_sum((1..=n).map(|l| {
                degenerate_log_weight(l)
                    .mul_ref(&x_pow(l))
                    .mul_ref(&s1.get(n, l))
                    .scale(&int_pow(l, 1 - k))
            }));
            if !tally.compare(n, Some(k), &lhs, &rhs) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn check_t11(tally: &mut Tally, max_n: usize, ks: RangeInclusive<i64>) -> Result<(), VerifyError> {
    let s2 = degenerate_stirling(StirlingKind::Second, max_n);
    for k in ks {
        let bel = gf_table(BellFamily::DegPolyBell2 { k }, max_n)?;
        for n in 1..=max_n {
            // (−λ)^{n−1}(1)_{n,1/λ} = (−1)^{n−1} ∏_{j<n}(λ − j)
            let lhs = degenerate_log_weight(n)
                .mul_ref(&x_pow(n))
                .scale(&(sign(n - 1) * int_pow(n, 1 - k)));
            let rhs = poly_sum((1..=n).map(|l| bel[l].mul_ref(&s2.get(n, l)).scale(&sign(n - l))));
            if !tally.compare(n, Some(k), &lhs, &rhs) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn compare_series(tally: &mut Tally, lhs: &PolySeries, rhs: &PolySeries) -> bool {
    for n in 0..=lhs.order().min(rhs.order()) {
        if !tally.compare(n, None, &lhs.egf_term(n), &rhs.egf_term(n)) {
            return false;
        }
    }
    true
}

fn check_chain(tally: &mut Tally, max_n: usize) -> Result<(), VerifyError> {
    let gf = BellFamily::Bell2.generating_function(max_n + 1)?;
    let x = MultiPoly::x();
    let t = TruncatedSeries::<MultiPoly>::variable(max_n + 1);
    let one = TruncatedSeries::<MultiPoly>::one(max_n + 1);

    // Derivative identity: d/dt log(1 + x log(1+t)) = x / ((1 + x log(1+t))(1+t)).
    let derivative = gf.derive()?;
    let denom = (one.clone() + log1p::<MultiPoly>(max_n + 1).scale(&x)) * (one.clone() + t.clone());
    let closed = denom.inverse()?.scale(&x);
    if !compare_series(tally, &derivative, &closed) {
        return Ok(());
    }

    // Substituting t → e^t − 1 gives x e^{−t} / (1 + xt).
    let substituted = derivative.compose(&exp_minus_one(max_n))?;
    let neg_t = t.truncate(max_n).scale(&-MultiPoly::one());
    let e_neg = exp_series::<MultiPoly>(max_n).compose(&neg_t)?;
    let geometric = (one.truncate(max_n) + t.truncate(max_n).scale(&x)).inverse()?;
    let rhs = (e_neg.clone() * geometric).scale(&x);
    if !compare_series(tally, &substituted, &rhs) {
        return Ok(());
    }

    // x = −1: −e^{−t}/(1 − t) = −Σ d_n t^n/n!.
    let minus_one = integer(-1);
    let at_minus_one = substituted.map(|c| c.eval(None, Some(&minus_one)));
    let d = derangements(max_n);
    let derangement_gf: PolySeries = TruncatedSeries::from_egf(
        d.values
            .iter()
            .map(|v| q(-ExactRational::from_integer(v.clone())))
            .collect(),
    );
    compare_series(tally, &at_minus_one, &derangement_gf);
    Ok(())
}

fn check_lambda_zero(tally: &mut Tally, max_n: usize, ks: RangeInclusive<i64>) -> Result<(), VerifyError> {
    let zero = ExactRational::zero();
    for kind in [StirlingKind::First, StirlingKind::Second] {
        let deg = degenerate_stirling(kind, max_n);
        let cls = stirling_table(kind, false, max_n);
        for n in 0..=max_n {
            for k in 0..=n {
                if !tally.compare(n, None, &deg.get(n, k).eval(Some(&zero), None), &cls.get(n, k)) {
                    return Ok(());
                }
            }
        }
    }
    let mut families = vec![BellFamily::DegBell, BellFamily::DegBell2];
    families.extend(ks.map(|k| BellFamily::DegPolyBell2 { k }));
    for family in families {
        let deg = gf_table(family, max_n)?;
        let cls = gf_table(family.classical_counterpart(), max_n)?;
        for n in family.first_index()..=max_n {
            if !tally.compare(n, family.poly_index(), &deg[n].eval(Some(&zero), None), &cls[n]) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn check_k_one(tally: &mut Tally, max_n: usize) -> Result<(), VerifyError> {
    let poly = gf_table(BellFamily::PolyBell2 { k: 1 }, max_n)?;
    let plain = gf_table(BellFamily::Bell2, max_n)?;
    for n in 1..=max_n {
        if !tally.compare(n, Some(1), &poly[n], &plain[n].scale(&sign(n - 1))) {
            return Ok(());
        }
    }
    let deg_poly = gf_table(BellFamily::DegPolyBell2 { k: 1 }, max_n)?;
    let deg_plain = gf_table(BellFamily::DegBell2, max_n)?;
    for n in 1..=max_n {
        if !tally.compare(n, Some(1), &deg_poly[n].scale(&sign(n - 1)), &deg_plain[n]) {
            return Ok(());
        }
    }
    Ok(())
}

fn check_reversion(tally: &mut Tally, max_n: usize) -> Result<(), VerifyError> {
    let reverted = bell2_number_series(max_n)?.map(|c| q(c.clone()));
    let direct = log1p::<MultiPoly>(max_n).compose(&log1p(max_n))?;
    if !compare_series(tally, &reverted, &direct) {
        return Ok(());
    }
    let deg_reverted = deg_bell2_number_series(max_n)?;
    let deg_direct = deg_log1p(max_n).compose(&deg_log1p(max_n))?;
    compare_series(tally, &deg_reverted, &deg_direct);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip_through_names() {
        for id in TheoremId::ALL.iter().chain([&TheoremId::T6AsPrinted]) {
            assert_eq!(id.name().parse::<TheoremId>().unwrap(), *id);
        }
        assert!(matches!(
            "T12".parse::<TheoremId>(),
            Err(VerifyError::UnknownTheorem(_))
        ));
    }

    #[test]
    fn contract_errors() {
        assert_eq!(
            check(TheoremId::T8, 4, None),
            Err(VerifyError::MissingKRange(TheoremId::T8))
        );
        #[allow(clippy::reversed_empty_ranges)]
        let empty = 3..=1;
        assert_eq!(
            check(TheoremId::T11, 4, Some(empty)),
            Err(VerifyError::EmptyKRange(TheoremId::T11))
        );
        assert_eq!(check(TheoremId::T1, 0, None), Err(VerifyError::MaxNTooSmall));
    }

    #[test]
    fn classical_theorems_pass() {
        for id in [TheoremId::T1, TheoremId::T2, TheoremId::T3, TheoremId::T4] {
            let r = check(id, 8, None).unwrap();
            assert!(r.passed(), "{id}: {:?}", r.counterexample);
        }
    }

    #[test]
    fn bel_one_is_noted() {
        let r = check(TheoremId::T3, 10, None).unwrap();
        assert!(r.passed());
        assert_eq!(r.notes, vec!["bel_1 = 1".to_string()]);
    }

    #[test]
    fn printed_theorem_six_fails_at_two() {
        let r = check(TheoremId::T6AsPrinted, 4, None).unwrap();
        assert_eq!(r.status, Status::Fail);
        let ce = r.counterexample.unwrap();
        assert_eq!(ce.n, 2);
        assert_eq!(ce.lhs, "x^2");
        assert!(check(TheoremId::T6, 4, None).unwrap().passed());
    }

    #[test]
    fn tally_stops_at_first_failure() {
        let mut t = Tally::default();
        assert!(t.compare(1, None, &MultiPoly::one(), &MultiPoly::one()));
        assert!(!t.compare(2, None, &MultiPoly::one(), &MultiPoly::x()));
        assert!(!t.compare(3, None, &MultiPoly::x(), &MultiPoly::one()));
        assert_eq!(t.failure.unwrap().n, 2);
        assert_eq!(t.cases, 2);
    }

    #[test]
    fn base_cases_only() {
        for r in check_all(Some(1), Some(1..=1)) {
            let r = r.unwrap();
            assert!(r.passed(), "{}", r.theorem);
        }
    }

    #[test]
    fn empty_k_range_only_affects_poly_theorems() {
        #[allow(clippy::reversed_empty_ranges)]
        let results = check_all(Some(3), Some(1..=0));
        for (id, r) in TheoremId::ALL.iter().zip(results) {
            if id.needs_k_range() {
                assert_eq!(r, Err(VerifyError::EmptyKRange(*id)));
            } else {
                assert!(r.unwrap().passed(), "{id}");
            }
        }
    }
}

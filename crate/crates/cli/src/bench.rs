//! Micro-benchmarks for series composition and reversion.
//!
//! Both workloads run on the Bell-number EGF e^{e^t−1} − 1 over the
//! rationals. Every algorithm's output is compared against the others
//! before any timing is reported.

use std::cell::Cell;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::time::{Duration, Instant};

use bellkit_core::bell::bell_number_series;
use bellkit_core::special::log1p;
use bellkit_core::{Coefficient, ExactRational, TruncatedSeries};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const MIN_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Workload {
    Compose,
    Revert,
}

impl FromStr for Workload {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "compose" => Ok(Workload::Compose),
            "revert" => Ok(Workload::Revert),
            _ => Err(CliError::Usage(format!(
                "unknown workload `{s}` (compose|revert)"
            ))),
        }
    }
}

impl fmt::Display for Workload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Workload::Compose => "compose",
            Workload::Revert => "revert",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgorithmTiming {
    pub algorithm: String,
    pub min_ns: u64,
    pub median_ns: u64,
    pub max_ns: u64,
    /// Coefficient multiplications in one run.
    pub coeff_mults: u64,
    /// Coefficient additions and subtractions in one run.
    pub coeff_adds: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchReport {
    pub kind: String,
    pub workload: Workload,
    pub order: usize,
    pub reps: usize,
    pub outputs_agree: bool,
    pub algorithms: Vec<AlgorithmTiming>,
}

thread_local! {
    static MULS: Cell<u64> = const { Cell::new(0) };
    static ADDS: Cell<u64> = const { Cell::new(0) };
}

fn bump(counter: &'static std::thread::LocalKey<Cell<u64>>) {
    counter.with(|c| c.set(c.get() + 1));
}

/// Rational that counts the ring operations performed on it (per thread).
#[derive(Clone, Debug, PartialEq)]
pub struct Counted(pub ExactRational);

impl Counted {
    fn reset() {
        MULS.with(|c| c.set(0));
        ADDS.with(|c| c.set(0));
    }

    fn totals() -> (u64, u64) {
        (MULS.with(Cell::get), ADDS.with(Cell::get))
    }
}

impl Zero for Counted {
    fn zero() -> Self {
        Counted(ExactRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Counted {
    fn one() -> Self {
        Counted(ExactRational::one())
    }
}

impl Add for Counted {
    type Output = Counted;

    fn add(self, rhs: Counted) -> Counted {
        bump(&ADDS);
        Counted(self.0 + rhs.0)
    }
}

impl Sub for Counted {
    type Output = Counted;

    fn sub(self, rhs: Counted) -> Counted {
        bump(&ADDS);
        Counted(self.0 - rhs.0)
    }
}

impl Mul for Counted {
    type Output = Counted;

    fn mul(self, rhs: Counted) -> Counted {
        bump(&MULS);
        Counted(self.0 * rhs.0)
    }
}

impl Neg for Counted {
    type Output = Counted;

    fn neg(self) -> Counted {
        Counted(-self.0)
    }
}

impl<'a> AddAssign<&'a Counted> for Counted {
    fn add_assign(&mut self, rhs: &'a Counted) {
        bump(&ADDS);
        self.0 += &rhs.0;
    }
}

impl<'a> SubAssign<&'a Counted> for Counted {
    fn sub_assign(&mut self, rhs: &'a Counted) {
        bump(&ADDS);
        self.0 -= &rhs.0;
    }
}

impl Coefficient for Counted {
    fn mul_ref(&self, rhs: &Self) -> Self {
        bump(&MULS);
        Counted(&self.0 * &rhs.0)
    }

    fn from_rational(r: &ExactRational) -> Self {
        Counted(r.clone())
    }

    fn try_inverse(&self) -> Option<Self> {
        self.0.try_inverse().map(Counted)
    }

    /// Counts one multiply and one add per nonzero pair, then evaluates
    /// with the rational kernel.
    fn sum_products<'a, I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (&'a Self, &'a Self)>,
    {
        let live: Vec<(&ExactRational, &ExactRational)> = pairs
            .into_iter()
            .filter(|(a, b)| !a.0.is_zero() && !b.0.is_zero())
            .map(|(a, b)| (&a.0, &b.0))
            .collect();
        let n = live.len() as u64;
        MULS.with(|c| c.set(c.get() + n));
        ADDS.with(|c| c.set(c.get() + n));
        Counted(ExactRational::sum_products(live))
    }
}

type Algorithm<C> = fn(&TruncatedSeries<C>, &TruncatedSeries<C>) -> TruncatedSeries<C>;

/// f ∘ g as Σ a_i g^i with full-order powers; the baseline for Horner.
pub fn compose_by_powers<C: Coefficient>(
    f: &TruncatedSeries<C>,
    g: &TruncatedSeries<C>,
) -> TruncatedSeries<C> {
    let order = f.order().min(g.order());
    let g = g.truncate(order);
    let mut out = TruncatedSeries::constant(f.coeff(0).clone(), order);
    let mut power = TruncatedSeries::one(order);
    for i in 1..=order {
        power = &power * &g;
        out = out + power.scale(f.coeff(i));
    }
    out
}

fn revert_newton<C: Coefficient>(f: &TruncatedSeries<C>, _: &TruncatedSeries<C>) -> TruncatedSeries<C> {
    f.revert().expect("workload is revertible")
}

fn revert_lagrange<C: Coefficient>(f: &TruncatedSeries<C>, _: &TruncatedSeries<C>) -> TruncatedSeries<C> {
    f.revert_lagrange().expect("workload is revertible")
}

fn compose_horner<C: Coefficient>(f: &TruncatedSeries<C>, g: &TruncatedSeries<C>) -> TruncatedSeries<C> {
    f.compose(g).expect("inner series has zero constant term")
}

fn algorithms<C: Coefficient>(workload: Workload) -> Vec<(&'static str, Algorithm<C>)> {
    match workload {
        Workload::Revert => vec![("newton", revert_newton), ("lagrange", revert_lagrange)],
        Workload::Compose => vec![("horner", compose_horner), ("powers", compose_by_powers)],
    }
}

/// Operands: for reversion the Bell-number EGF (second operand unused);
/// for composition log(1+log(1+t)) ∘ (e^{e^t−1} − 1), which must give t.
fn operands(
    workload: Workload,
    order: usize,
) -> (TruncatedSeries<ExactRational>, TruncatedSeries<ExactRational>) {
    let bell = bell_number_series(order);
    match workload {
        Workload::Revert => (bell.clone(), bell),
        Workload::Compose => {
            let outer = log1p::<ExactRational>(order)
                .compose(&log1p(order))
                .expect("log(1+t) has zero constant term");
            (outer, bell)
        }
    }
}

fn nanos(d: Duration) -> u64 {
    u64::try_from(d.as_nanos()).unwrap_or(u64::MAX)
}

pub fn run(workload: Workload, order: usize, reps: usize) -> Result<BenchReport, CliError> {
    if order < MIN_ORDER {
        return Err(CliError::Usage(format!("bench needs --order >= {MIN_ORDER}")));
    }
    if reps == 0 {
        return Err(CliError::Usage("bench needs --reps >= 1".into()));
    }
    let (f, g) = operands(workload, order);

    // Correctness gate, then operation counts on the counting ring.
    let outputs: Vec<_> = algorithms::<ExactRational>(workload)
        .into_iter()
        .map(|(_, alg)| alg(&f, &g))
        .collect();
    let mut agree = outputs.windows(2).all(|w| w[0] == w[1]);
    if workload == Workload::Compose {
        agree &= outputs[0] == TruncatedSeries::variable(order);
    }
    if !agree {
        return Err(CliError::Failed(format!(
            "{workload} algorithms disagree at order {order}"
        )));
    }
    let fc = f.map(|c| Counted(c.clone()));
    let gc = g.map(|c| Counted(c.clone()));
    let counts: Vec<(u64, u64)> = algorithms::<Counted>(workload)
        .into_iter()
        .map(|(_, alg)| {
            Counted::reset();
            let _ = alg(&fc, &gc);
            Counted::totals()
        })
        .collect();

    let mut timings = Vec::new();
    for ((name, alg), (mults, adds)) in algorithms::<ExactRational>(workload).into_iter().zip(counts) {
        let mut samples: Vec<u64> = (0..reps)
            .map(|_| {
                let start = Instant::now();
                let out = alg(&f, &g);
                let elapsed = start.elapsed();
                drop(out);
                nanos(elapsed)
            })
            .collect();
        samples.sort_unstable();
        timings.push(AlgorithmTiming {
            algorithm: name.to_string(),
            min_ns: samples[0],
            median_ns: samples[samples.len() / 2],
            max_ns: samples[samples.len() - 1],
            coeff_mults: mults,
            coeff_adds: adds,
        });
    }
    Ok(BenchReport {
        kind: "bench".to_string(),
        workload,
        order,
        reps,
        outputs_agree: agree,
        algorithms: timings,
    })
}

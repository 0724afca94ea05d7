//! Primitive generating functions and the triangles extracted from them.
//!
//! Classical series are generic over the coefficient ring; degenerate ones
//! carry λ symbolically and so live in [`PolySeries`].

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ring::{degenerate_log_weight, falling_factorial_deg, MultiPoly, XArg};
use crate::scalar::{factorial, int_pow, integer, sign, Coefficient, ExactRational};
use crate::series::TruncatedSeries;
use crate::PolySeries;

fn inv_factorial(n: usize) -> ExactRational {
    ExactRational::from_integer(factorial(n)).recip()
}

/// e^t.
pub fn exp_series<C: Coefficient>(order: usize) -> TruncatedSeries<C> {
    TruncatedSeries::from_coeffs((0..=order).map(|n| C::from_rational(&inv_factorial(n))).collect())
}

/// e^t − 1.
pub fn exp_minus_one<C: Coefficient>(order: usize) -> TruncatedSeries<C> {
    let mut coeffs = exp_series::<C>(order).into_coeffs();
    coeffs[0] = C::zero();
    TruncatedSeries::from_coeffs(coeffs)
}

/// log(1 + t).
pub fn log1p<C: Coefficient>(order: usize) -> TruncatedSeries<C> {
    TruncatedSeries::from_coeffs(
        (0..=order)
            .map(|n| match n {
                0 => C::zero(),
                _ => C::from_rational(&(sign(n - 1) / integer(n as i64))),
            })
            .collect(),
    )
}

/// e_λ^x(t) = Σ (x)_{n,λ} t^n/n!. With `XArg::Value(1)` this is e_λ(t).
pub fn deg_exp(base: &XArg, order: usize) -> PolySeries {
    TruncatedSeries::from_coeffs(
        (0..=order)
            .map(|n| falling_factorial_deg(base, n).scale(&inv_factorial(n)))
            .collect(),
    )
}

/// e_λ(t) − 1.
pub fn deg_exp_minus_one(order: usize) -> PolySeries {
    let mut coeffs = deg_exp(&XArg::Value(ExactRational::one()), order).into_coeffs();
    coeffs[0] = MultiPoly::zero();
    TruncatedSeries::from_coeffs(coeffs)
}

/// log_λ(1 + t) = Σ_{n≥1} λ^{n−1}(1)_{n,1/λ} t^n/n!.
pub fn deg_log1p(order: usize) -> PolySeries {
    TruncatedSeries::from_coeffs(
        (0..=order)
            .map(|n| degenerate_log_weight(n).scale(&inv_factorial(n)))
            .collect(),
    )
}

/// Li_k(t) = Σ_{n≥1} t^n / n^k, for any integer k.
pub fn polylog<C: Coefficient>(k: i64, order: usize) -> TruncatedSeries<C> {
    TruncatedSeries::from_coeffs(
        (0..=order)
            .map(|n| match n {
                0 => C::zero(),
                _ => C::from_rational(&int_pow(n, -k)),
            })
            .collect(),
    )
}

/// Li_{k,λ}(t) = Σ_{n≥1} (−λ)^{n−1}(1)_{n,1/λ} / ((n−1)! n^k) · t^n.
///
/// The numerator is realized as (−1)^{n−1} ∏_{j=1}^{n−1}(λ − j).
pub fn deg_polylog(k: i64, order: usize) -> PolySeries {
    TruncatedSeries::from_coeffs(
        (0..=order)
            .map(|n| match n {
                0 => MultiPoly::zero(),
                _ => {
                    let weight = sign(n - 1) * inv_factorial(n - 1) * int_pow(n, -k);
                    degenerate_log_weight(n).scale(&weight)
                }
            })
            .collect(),
    )
}

/// Derangement numbers d_0..d_N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerangementSeq {
    pub values: Vec<BigInt>,
}

/// d_0 = 1, d_n = n·d_{n−1} + (−1)^n.
pub fn derangements(max_n: usize) -> DerangementSeq {
    let mut values = Vec::with_capacity(max_n + 1);
    values.push(BigInt::one());
    for n in 1..=max_n {
        let parity = if n % 2 == 0 { 1 } else { -1 };
        let next = &values[n - 1] * BigInt::from(n) + BigInt::from(parity);
        values.push(next);
    }
    DerangementSeq { values }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StirlingKind {
    First,
    Second,
}

/// Lower-triangular table S(n, k), 0 ≤ k ≤ n ≤ max_n.
#[derive(Clone, Debug, PartialEq)]
pub struct StirlingTable<C> {
    pub kind: StirlingKind,
    pub degenerate: bool,
    rows: Vec<Vec<C>>,
}

impl<C: Coefficient> StirlingTable<C> {
    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// S(n, k); zero above the diagonal. Panics if n > max_n.
    pub fn get(&self, n: usize, k: usize) -> C {
        self.rows[n].get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn row(&self, n: usize) -> &[C] {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[Vec<C>] {
        &self.rows
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> StirlingTable<D> {
        StirlingTable {
            kind: self.kind,
            degenerate: self.degenerate,
            rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    /// Builds the table from S(n, k) = n! [t^n] g(t)^k / k!.
    pub fn from_series(kind: StirlingKind, degenerate: bool, g: &TruncatedSeries<C>) -> Self {
        let max_n = g.order();
        let mut rows: Vec<Vec<C>> = (0..=max_n).map(|n| Vec::with_capacity(n + 1)).collect();
        let mut divided_power = TruncatedSeries::one(max_n);
        for k in 0..=max_n {
            if k > 0 {
                divided_power = (&divided_power * g).scale_rational(&integer(k as i64).recip());
            }
            let egf = divided_power.egf_terms();
            for (n, row) in rows.iter_mut().enumerate().skip(k) {
                row.push(egf[n].clone());
            }
        }
        StirlingTable {
            kind,
            degenerate,
            rows,
        }
    }
}

/// Classical table: first kind from log(1+t), second kind from e^t − 1.
pub fn classical_stirling(kind: StirlingKind, max_n: usize) -> StirlingTable<ExactRational> {
    let g = match kind {
        StirlingKind::First => log1p(max_n),
        StirlingKind::Second => exp_minus_one(max_n),
    };
    StirlingTable::from_series(kind, false, &g)
}

/// Degenerate table: first kind from log_λ(1+t), second kind from e_λ(t) − 1.
pub fn degenerate_stirling(kind: StirlingKind, max_n: usize) -> StirlingTable<MultiPoly> {
    let g = match kind {
        StirlingKind::First => deg_log1p(max_n),
        StirlingKind::Second => deg_exp_minus_one(max_n),
    };
    StirlingTable::from_series(kind, true, &g)
}

/// Either table with polynomial entries (classical entries are constants).
pub fn stirling_table(kind: StirlingKind, degenerate: bool, max_n: usize) -> StirlingTable<MultiPoly> {
    if degenerate {
        degenerate_stirling(kind, max_n)
    } else {
        classical_stirling(kind, max_n).map(|c| MultiPoly::constant(c.clone()))
    }
}

/// |S_1(n, k)| = (−1)^{n−k} S_1(n, k), the unsigned first-kind numbers.
pub fn unsigned_first_kind(table: &StirlingTable<ExactRational>, n: usize, k: usize) -> ExactRational {
    debug_assert_eq!(table.kind, StirlingKind::First);
    if k > n {
        return ExactRational::zero();
    }
    sign(n - k) * table.get(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use crate::RationalSeries;

    type Q = ExactRational;

    fn zero_lambda(p: &MultiPoly) -> MultiPoly {
        p.eval(Some(&Q::zero()), None)
    }

    // Number of set partitions of an n-set into k blocks, by enumerating
    // restricted growth strings.
    fn count_partitions(n: usize, k: usize) -> u64 {
        fn go(pos: usize, n: usize, blocks: usize, k: usize) -> u64 {
            if pos == n {
                return (blocks == k) as u64;
            }
            (0..=blocks.min(k.saturating_sub(1)))
                .map(|b| go(pos + 1, n, blocks.max(b + 1), k))
                .sum()
        }
        if n == 0 {
            return (k == 0) as u64;
        }
        go(0, n, 0, k)
    }

    // Signed first-kind numbers via s(n+1,k) = s(n,k−1) − n s(n,k).
    fn first_kind_recurrence(max_n: usize) -> Vec<Vec<i64>> {
        let mut t = vec![vec![0i64; max_n + 1]; max_n + 1];
        t[0][0] = 1;
        for n in 0..max_n {
            for k in 1..=n + 1 {
                t[n + 1][k] = t[n][k - 1] - (n as i64) * t[n][k];
            }
        }
        t
    }

    #[test]
    fn second_kind_counts_partitions() {
        let s2 = classical_stirling(StirlingKind::Second, 7);
        assert_eq!(s2.get(3, 2), Q::from_integer(3.into()));
        for n in 0..=7 {
            for k in 0..=n {
                assert_eq!(
                    s2.get(n, k),
                    Q::from_integer(count_partitions(n, k).into()),
                    "S2({n},{k})"
                );
            }
        }
    }

    #[test]
    fn first_kind_matches_recurrence() {
        let s1 = classical_stirling(StirlingKind::First, 9);
        let oracle = first_kind_recurrence(9);
        for n in 0..=9 {
            for k in 0..=n {
                assert_eq!(s1.get(n, k), integer(oracle[n][k]));
            }
        }
        assert_eq!(unsigned_first_kind(&s1, 4, 2), integer(11));
    }

    #[test]
    fn triangle_shape() {
        for kind in [StirlingKind::First, StirlingKind::Second] {
            let t = degenerate_stirling(kind, 6);
            assert_eq!(t.get(0, 0), MultiPoly::one());
            for n in 1..=6 {
                assert!(t.get(n, 0).is_zero());
                assert_eq!(t.get(n, n), MultiPoly::one());
                assert!(t.get(n, n + 3).is_zero());
            }
        }
    }

    #[test]
    fn degenerate_first_kind_entry() {
        let t = degenerate_stirling(StirlingKind::First, 3);
        assert_eq!(t.get(2, 1), MultiPoly::lambda() - MultiPoly::one());
    }

    #[test]
    fn degenerate_tables_reduce_at_lambda_zero() {
        for kind in [StirlingKind::First, StirlingKind::Second] {
            let deg = degenerate_stirling(kind, 9);
            let cls = stirling_table(kind, false, 9);
            for n in 0..=9 {
                for k in 0..=n {
                    assert_eq!(zero_lambda(&deg.get(n, k)), cls.get(n, k));
                }
            }
        }
    }

    #[test]
    fn inversion_formula() {
        let n_max = 10;
        let check = |s1: &StirlingTable<MultiPoly>, s2: &StirlingTable<MultiPoly>| {
            for n in 0..=n_max {
                for m in 0..=n_max {
                    let mut sum = MultiPoly::zero();
                    for k in 0..=n_max {
                        sum += &s1.get(n, k).mul_ref(&s2.get(k, m));
                    }
                    let delta = if n == m {
                        MultiPoly::one()
                    } else {
                        MultiPoly::zero()
                    };
                    assert_eq!(sum, delta, "n={n} m={m}");
                }
            }
        };
        check(
            &stirling_table(StirlingKind::First, false, n_max),
            &stirling_table(StirlingKind::Second, false, n_max),
        );
        check(
            &degenerate_stirling(StirlingKind::First, n_max),
            &degenerate_stirling(StirlingKind::Second, n_max),
        );
    }

    #[test]
    fn elementary_series() {
        let l: RationalSeries = log1p(3);
        assert_eq!(
            l.coeffs(),
            &[rational(0, 1), rational(1, 1), rational(-1, 2), rational(1, 3)]
        );
        let e: RationalSeries = exp_minus_one(2);
        assert_eq!(e.coeffs(), &[rational(0, 1), rational(1, 1), rational(1, 2)]);
        let round: RationalSeries = log1p(8).compose(&exp_minus_one(8)).unwrap();
        assert_eq!(round, TruncatedSeries::variable(8));
    }

    #[test]
    fn degenerate_exponential() {
        let one = XArg::Value(Q::one());
        let e = deg_exp(&one, 2);
        let expected: PolySeries = TruncatedSeries::from_coeffs(vec![
            MultiPoly::one(),
            MultiPoly::one(),
            (MultiPoly::one() - MultiPoly::lambda()).scale(&rational(1, 2)),
        ]);
        assert_eq!(e, expected);

        let ex = deg_exp(&XArg::Symbolic, 6);
        for n in 0..=6 {
            assert_eq!(
                zero_lambda(ex.coeff(n)),
                MultiPoly::x().pow(n as u32).scale(&inv_factorial(n))
            );
        }
        let x = MultiPoly::x();
        let l = MultiPoly::lambda();
        let third = x.clone() * (x.clone() - l.clone()) * (x - l.scale(&integer(2)));
        assert_eq!(ex.egf_term(3), third);
    }

    #[test]
    fn degenerate_logarithm() {
        let l = MultiPoly::lambda();
        let one = MultiPoly::one();
        let expected: PolySeries = TruncatedSeries::from_egf(vec![
            MultiPoly::zero(),
            one.clone(),
            l.clone() - one.clone(),
            (l.clone() - one.clone()) * (l - one.scale(&integer(2))),
        ]);
        assert_eq!(deg_log1p(3), expected);
        let classical: PolySeries = log1p(9);
        assert_eq!(deg_log1p(9).map(zero_lambda), classical);
        let round = deg_log1p(8).compose(&deg_exp_minus_one(8)).unwrap();
        assert_eq!(round, TruncatedSeries::variable(8));
    }

    #[test]
    fn degenerate_log_from_binomial_series() {
        // ((1+t)^λ − 1)/λ with (1+t)^λ = exp(λ log(1+t)), expanded
        // symbolically and then divided by λ term by term.
        let order = 10;
        let lam_log: PolySeries = log1p::<MultiPoly>(order).scale(&MultiPoly::lambda());
        let power = exp_series::<MultiPoly>(order).compose(&lam_log).unwrap();
        let divided: Vec<MultiPoly> = power
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n == 0 {
                    assert_eq!(*c, MultiPoly::one());
                    return MultiPoly::zero();
                }
                MultiPoly::from_terms(c.terms().map(|(m, v)| {
                    assert!(m.lambda >= 1);
                    (crate::ring::Monomial::new(m.lambda - 1, m.x), v.clone())
                }))
            })
            .collect();
        assert_eq!(TruncatedSeries::from_coeffs(divided), deg_log1p(order));
    }

    #[test]
    fn polylogarithms() {
        let li1: RationalSeries = polylog(1, 3);
        assert_eq!(
            li1.coeffs(),
            &[rational(0, 1), rational(1, 1), rational(1, 2), rational(1, 3)]
        );
        // −log(1 − t)
        let neg_t = TruncatedSeries::from_coeffs(vec![
            rational(0, 1),
            rational(-1, 1),
            rational(0, 1),
            rational(0, 1),
        ]);
        assert_eq!(li1, -log1p::<Q>(3).compose(&neg_t).unwrap());
        let li0: RationalSeries = polylog(0, 2);
        assert_eq!(li0.coeffs(), &[rational(0, 1), rational(1, 1), rational(1, 1)]);
        let li2: RationalSeries = polylog(2, 2);
        assert_eq!(li2.coeffs(), &[rational(0, 1), rational(1, 1), rational(1, 4)]);
        let lim1: RationalSeries = polylog(-1, 3);
        assert_eq!(
            lim1.coeffs(),
            &[rational(0, 1), rational(1, 1), rational(2, 1), rational(3, 1)]
        );
    }

    #[test]
    fn degenerate_polylogarithms() {
        let order = 8;
        let neg_t: PolySeries = TruncatedSeries::variable(order).scale(&-MultiPoly::one());
        let neg_log = -deg_log1p(order).compose(&neg_t).unwrap();
        assert_eq!(deg_polylog(1, order), neg_log);
        for k in -2..=3 {
            let classical: PolySeries = polylog(k, order);
            assert_eq!(deg_polylog(k, order).map(zero_lambda), classical);
        }
        // (−λ)(1)_{2,1/λ}/(1!·2²) = (1 − λ)/4
        let c2 = deg_polylog(2, 2).coeff(2).clone();
        assert_eq!(
            c2,
            (MultiPoly::one() - MultiPoly::lambda()).scale(&rational(1, 4))
        );
    }

    #[test]
    fn derangement_numbers() {
        let d = derangements(12);
        let head: Vec<i64> = d.values[..5].iter().map(|v| i64::try_from(v).unwrap()).collect();
        assert_eq!(head, vec![1, 0, 1, 2, 9]);
        // n! [t^n] e^{−t}/(1 − t)
        let neg_t: RationalSeries = TruncatedSeries::variable(12).scale(&integer(-1));
        let e_neg = exp_series::<Q>(12).compose(&neg_t).unwrap();
        let one_minus_t = TruncatedSeries::one(12) - TruncatedSeries::variable(12);
        let gf = e_neg * one_minus_t.inverse().unwrap();
        let from_gf: Vec<Q> = gf.egf_terms();
        let from_rec: Vec<Q> = d.values.iter().map(|v| Q::from_integer(v.clone())).collect();
        assert_eq!(from_gf, from_rec);
    }
}

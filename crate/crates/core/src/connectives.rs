//! Logical connectives on truth values.

use thiserror::Error;

use crate::measures::uncertainty_degree;
use crate::truth::{FuzzyTruth, DEFAULT_TOL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConnectiveError {
    /// Two different values are equally certain, so knowledge aggregation
    /// has no winner.
    #[error("knowledge aggregation of {0} and {1} is undefined: equal uncertainty, different values")]
    AggregationTie(FuzzyTruth, FuzzyTruth),
}

/// Classical negation: reflection about 0.5. Preserves the uncertainty
/// degree and the truncation flag.
pub fn negate(x: &FuzzyTruth) -> FuzzyTruth {
    let [a, b, c, d] = x.params();
    FuzzyTruth::from_ordered(1.0 - d, 1.0 - c, 1.0 - b, 1.0 - a)
}

/// Negation as failure: the exact value `IFN(1 − b, 1 − b)`.
pub fn naf(x: &FuzzyTruth) -> FuzzyTruth {
    let v = 1.0 - x.b();
    FuzzyTruth::from_ordered(v, v, v, v)
}

fn min_max(values: [f64; 4]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
}

/// Product t-norm.
///
/// Restricted operands multiply componentwise. If either operand is
/// truncated, the support and the core are each bounded by the extreme
/// cross products of the operands' bounds.
pub fn conj(x: &FuzzyTruth, y: &FuzzyTruth) -> FuzzyTruth {
    let [a1, b1, c1, d1] = x.params();
    let [a2, b2, c2, d2] = y.params();
    if x.is_restricted() && y.is_restricted() {
        return FuzzyTruth::from_ordered(a1 * a2, b1 * b2, c1 * c2, d1 * d2);
    }
    let (lo, hi) = min_max([a1 * a2, a1 * d2, d1 * a2, d1 * d2]);
    let (core_lo, core_hi) = min_max([b1 * b2, b1 * c2, c1 * b2, c1 * c2]);
    FuzzyTruth::from_ordered(lo, core_lo, core_hi, hi)
}

/// Disjunction as the De Morgan dual of [`conj`].
pub fn disj(x: &FuzzyTruth, y: &FuzzyTruth) -> FuzzyTruth {
    negate(&conj(&negate(x), &negate(y)))
}

/// Knowledge aggregation with the default tolerance.
pub fn kagg(x: &FuzzyTruth, y: &FuzzyTruth) -> Result<FuzzyTruth, ConnectiveError> {
    kagg_tol(x, y, DEFAULT_TOL)
}

/// Keeps the more certain argument (smaller uncertainty degree). Equally
/// certain arguments must be equal, otherwise the aggregate does not exist.
pub fn kagg_tol(x: &FuzzyTruth, y: &FuzzyTruth, tol: f64) -> Result<FuzzyTruth, ConnectiveError> {
    let (kx, ky) = (uncertainty_degree(x), uncertainty_degree(y));
    if kx < ky - tol {
        Ok(*x)
    } else if ky < kx - tol {
        Ok(*y)
    } else if x.approx_eq(y, tol) {
        Ok(*x)
    } else {
        Err(ConnectiveError::AggregationTie(*x, *y))
    }
}

/// Left fold of [`conj`] over `values`, starting from `IFN(1, 1)`.
pub fn conj_all<'a>(values: impl IntoIterator<Item = &'a FuzzyTruth>) -> FuzzyTruth {
    values
        .into_iter()
        .fold(FuzzyTruth::TRUE, |acc, v| conj(&acc, v))
}

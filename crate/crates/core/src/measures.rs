//! Truth and uncertainty degrees, and the two preorders they induce.
//!
//! A value is read as a probability density over the unknown actual truth
//! degree: its membership function restricted to `[0, 1]` and scaled by
//! `h = 1 / k`, where `k` is the area under that restricted curve. The truth
//! degree `t` is the mean of this density; lower `k` means more knowledge.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::truth::{FuzzyTruth, DEFAULT_TOL};

/// Areas below this are treated as exact points.
const POINT_AREA: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("{0} is truncated; an equivalent interval needs a restricted value")]
    NotRestricted(FuzzyTruth),
}

/// The `(t, k)` pair of a value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Measure {
    pub t: f64,
    pub k: f64,
}

/// Result of comparing two values in both preorders.
///
/// `knowledge == Less` means the left value carries less knowledge, i.e. a
/// strictly larger uncertainty degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Comparison {
    pub truth: Ordering,
    pub knowledge: Ordering,
}

impl Measure {
    pub fn of(x: &FuzzyTruth) -> Self {
        Measure {
            t: truth_degree(x),
            k: uncertainty_degree(x),
        }
    }

    /// Compares both components, treating differences within `tol` as ties.
    pub fn compare(&self, other: &Measure, tol: f64) -> Comparison {
        Comparison {
            truth: cmp_tol(self.t, other.t, tol),
            knowledge: cmp_tol(other.k, self.k, tol),
        }
    }
}

fn cmp_tol(x: f64, y: f64, tol: f64) -> Ordering {
    if (x - y).abs() <= tol {
        Ordering::Equal
    } else if x < y {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// `b³ − a³` over `b − a`, written without the removable singularity.
fn cube_quotient(lo: f64, hi: f64) -> f64 {
    lo * lo + lo * hi + hi * hi
}

/// Uncertainty degree: area under the membership curve on `[0, 1]`.
pub fn uncertainty_degree(x: &FuzzyTruth) -> f64 {
    let [a, b, c, d] = x.params();
    let full = (d + c - b - a) / 2.0;
    if x.is_restricted() {
        return full;
    }
    let left = if a < 0.0 { a * a / (2.0 * (b - a)) } else { 0.0 };
    let right = if d > 1.0 {
        (d - 1.0) * (d - 1.0) / (2.0 * (d - c))
    } else {
        0.0
    };
    (full - left - right).max(0.0)
}

/// `∫ v·μ(v) dv` over the truncated support, from exact antiderivatives of
/// the three linear pieces.
fn truncated_moment(x: &FuzzyTruth) -> f64 {
    let [a, b, c, d] = x.params();
    let lo = a.max(0.0);
    let hi = d.min(1.0);
    let mut moment = (c - b) * (c + b) / 2.0;
    if b > lo {
        // substitute u = v - a on [lo, b]
        let (u0, u1) = (lo - a, b - a);
        moment += (u1.powi(3) - u0.powi(3)) / (3.0 * u1) + a * (u1 * u1 - u0 * u0) / (2.0 * u1);
    }
    if hi > c {
        // substitute w = d - v on [c, hi]
        let (w1, w0) = (d - hi, d - c);
        moment += d * (w0 * w0 - w1 * w1) / (2.0 * w0) - (w0.powi(3) - w1.powi(3)) / (3.0 * w0);
    }
    moment
}

/// Truth degree: the mean of the equivalent density.
pub fn truth_degree(x: &FuzzyTruth) -> f64 {
    let [a, b, c, d] = x.params();
    if x.is_restricted() {
        let span = d + c - b - a;
        if span <= 0.0 {
            return b;
        }
        return (cube_quotient(c, d) - cube_quotient(a, b)) / (3.0 * span);
    }
    let k = uncertainty_degree(x);
    if k <= POINT_AREA {
        return b;
    }
    (truncated_moment(x) / k).clamp(0.0, 1.0)
}

/// Height `h = 1/k` of the equivalent density; `None` for exact points.
pub fn height(x: &FuzzyTruth) -> Option<f64> {
    let k = uncertainty_degree(x);
    (k > POINT_AREA).then(|| 1.0 / k)
}

/// Equivalent probability density at `v`. Exact points have no density and
/// yield 0 everywhere.
pub fn density(x: &FuzzyTruth, v: f64) -> f64 {
    match height(x) {
        Some(h) if (0.0..=1.0).contains(&v) => h * x.membership(v),
        _ => 0.0,
    }
}

pub fn compare(x: &FuzzyTruth, y: &FuzzyTruth, tol: f64) -> Comparison {
    Measure::of(x).compare(&Measure::of(y), tol)
}

/// `x ≤ y` in the truth preorder.
pub fn leq_truth(x: &FuzzyTruth, y: &FuzzyTruth) -> bool {
    compare(x, y, DEFAULT_TOL).truth != Ordering::Greater
}

/// `x ≤ y` in the knowledge preorder, i.e. `k(x) ≥ k(y)`.
pub fn leq_knowledge(x: &FuzzyTruth, y: &FuzzyTruth) -> bool {
    compare(x, y, DEFAULT_TOL).knowledge != Ordering::Greater
}

/// The degenerate interval `IFN(t, t)` centred on the truth degree.
pub fn equivalent_interval(x: &FuzzyTruth) -> Result<FuzzyTruth, MeasureError> {
    if x.is_truncated() {
        return Err(MeasureError::NotRestricted(*x));
    }
    let t = truth_degree(x);
    Ok(FuzzyTruth::point(t.clamp(0.0, 1.0)).expect("truth degree lies in [0, 1]"))
}

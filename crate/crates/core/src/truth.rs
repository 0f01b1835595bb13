//! The value space of epistemic states.
//!
//! Every truth value is stored as one trapezoidal quadruple `(a, b, c, d)`.
//! Intervals and triangles are derived classifications of the same shape:
//! `a == b && c == d` is an interval, `b == c` is a triangle, anything else
//! is a trapezoid.
//!
//! The core `[b, c]` must lie inside `[0, 1]`. When the support `[a, d]`
//! spills outside the unit interval the value is *semi-restricted*; it is
//! kept with its original parameters and a `truncated` flag, and every
//! consumer reads it as its restriction to `[0, 1]`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default absolute tolerance for comparing parameters and measures.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TruthError {
    #[error("parameters must satisfy a <= b <= c <= d, got ({0}, {1}, {2}, {3})")]
    OrderViolation(f64, f64, f64, f64),
    #[error("core [{0}, {1}] must lie inside [0, 1]")]
    CoreOutOfRange(f64, f64),
    #[error("alpha must lie in [0, 1], got {0}")]
    AlphaOutOfRange(f64),
    #[error("parameters must be finite")]
    NotFinite,
}

/// Derived shape of a [`FuzzyTruth`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    Interval,
    Triangular,
    Trapezoidal,
}

/// An element of the truth value space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FuzzyTruth {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    truncated: bool,
}

/// The interval cut of a fuzzy number at a membership level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaCut {
    pub alpha: f64,
    pub lower: f64,
    pub upper: f64,
}

impl AlphaCut {
    pub fn contains(&self, other: &AlphaCut) -> bool {
        self.lower <= other.lower && other.upper <= self.upper
    }
}

impl FuzzyTruth {
    /// Complete ignorance, `IFN(0, 1)`.
    pub const UNKNOWN: FuzzyTruth = FuzzyTruth::from_parts(0.0, 0.0, 1.0, 1.0);
    /// Certainly true, `IFN(1, 1)`.
    pub const TRUE: FuzzyTruth = FuzzyTruth::from_parts(1.0, 1.0, 1.0, 1.0);
    /// Certainly false, `IFN(0, 0)`.
    pub const FALSE: FuzzyTruth = FuzzyTruth::from_parts(0.0, 0.0, 0.0, 0.0);

    const fn from_parts(a: f64, b: f64, c: f64, d: f64) -> Self {
        FuzzyTruth {
            a,
            b,
            c,
            d,
            truncated: a < 0.0 || d > 1.0,
        }
    }

    /// Builds a value from a trapezoidal quadruple.
    ///
    /// A support leaving `[0, 1]` yields a truncated value; a core leaving it
    /// is rejected.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, TruthError> {
        if ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(TruthError::NotFinite);
        }
        if !(a <= b && b <= c && c <= d) {
            return Err(TruthError::OrderViolation(a, b, c, d));
        }
        if !(0.0..=1.0).contains(&b) || !(0.0..=1.0).contains(&c) {
            return Err(TruthError::CoreOutOfRange(b, c));
        }
        Ok(Self::from_parts(a, b, c, d))
    }

    /// `IFN(lower, upper)`.
    pub fn interval(lower: f64, upper: f64) -> Result<Self, TruthError> {
        Self::new(lower, lower, upper, upper)
    }

    /// `TFN(a, peak, c)`.
    pub fn triangular(a: f64, peak: f64, c: f64) -> Result<Self, TruthError> {
        Self::new(a, peak, peak, c)
    }

    /// The exact value `IFN(v, v)`.
    pub fn point(v: f64) -> Result<Self, TruthError> {
        Self::new(v, v, v, v)
    }

    /// Construction for values produced by connectives, whose parameters are
    /// ordered by construction. Rounding may push a core bound a few ulps
    /// past the unit interval; those are clamped back.
    pub(crate) fn from_ordered(a: f64, b: f64, c: f64, d: f64) -> Self {
        let b = b.clamp(0.0, 1.0);
        let c = c.clamp(0.0, 1.0);
        debug_assert!(a <= b && b <= c && c <= d, "unordered ({a}, {b}, {c}, {d})");
        Self::from_parts(a.min(b), b, c, d.max(c))
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn params(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn is_restricted(&self) -> bool {
        !self.truncated
    }

    pub fn shape(&self) -> Shape {
        if self.a == self.b && self.c == self.d {
            Shape::Interval
        } else if self.b == self.c {
            Shape::Triangular
        } else {
            Shape::Trapezoidal
        }
    }

    /// True for exact values `IFN(v, v)`.
    pub fn is_point(&self) -> bool {
        self.a == self.d
    }

    /// Membership degree of `v`. Truncated values are zero outside `[0, 1]`.
    pub fn membership(&self, v: f64) -> f64 {
        if self.truncated && !(0.0..=1.0).contains(&v) {
            return 0.0;
        }
        let FuzzyTruth { a, b, c, d, .. } = *self;
        if v < a || v > d {
            0.0
        } else if v >= b && v <= c {
            1.0
        } else if v < b {
            (v - a) / (b - a)
        } else {
            (d - v) / (d - c)
        }
    }

    /// The α-cut of the untruncated quadruple.
    pub fn alpha_cut(&self, alpha: f64) -> Result<AlphaCut, TruthError> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(TruthError::AlphaOutOfRange(alpha));
        }
        Ok(AlphaCut {
            alpha,
            lower: self.a + alpha * (self.b - self.a),
            upper: self.d - alpha * (self.d - self.c),
        })
    }

    /// Parameter-wise comparison within `eps`. The shape is ignored, the
    /// truncation flag is not.
    pub fn approx_eq(&self, other: &FuzzyTruth, eps: f64) -> bool {
        self.truncated == other.truncated
            && self
                .params()
                .iter()
                .zip(other.params().iter())
                .all(|(x, y)| (x - y).abs() <= eps)
    }
}

impl fmt::Display for FuzzyTruth {
    /// Canonical literal syntax, e.g. `tfn(0.4,0.4,1.5)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape() {
            Shape::Interval => write!(f, "ifn({},{})", self.a, self.d),
            Shape::Triangular => write!(f, "tfn({},{},{})", self.a, self.b, self.d),
            Shape::Trapezoidal => {
                write!(f, "trfn({},{},{},{})", self.a, self.b, self.c, self.d)
            }
        }
    }
}

/// `IFN(a, d)`; panics on invalid parameters. Intended for literals in code
/// and tests.
pub fn ifn(a: f64, d: f64) -> FuzzyTruth {
    FuzzyTruth::interval(a, d).expect("invalid interval literal")
}

/// `TFN(a, b, c)`; panics on invalid parameters.
pub fn tfn(a: f64, b: f64, c: f64) -> FuzzyTruth {
    FuzzyTruth::triangular(a, b, c).expect("invalid triangular literal")
}

/// `TrFN(a, b, c, d)`; panics on invalid parameters.
pub fn trfn(a: f64, b: f64, c: f64, d: f64) -> FuzzyTruth {
    FuzzyTruth::new(a, b, c, d).expect("invalid trapezoidal literal")
}

#[cfg(test)]
pub(crate) mod strategies {
    use super::FuzzyTruth;
    use proptest::prelude::*;

    /// Restricted values of every shape.
    pub fn restricted() -> impl Strategy<Value = FuzzyTruth> {
        prop::array::uniform4(0.0f64..=1.0).prop_flat_map(|mut p| {
            p.sort_by(|x, y| x.partial_cmp(y).unwrap());
            prop_oneof![
                Just(FuzzyTruth::new(p[0], p[1], p[2], p[3]).unwrap()),
                Just(FuzzyTruth::new(p[0], p[1], p[1], p[3]).unwrap()),
                Just(FuzzyTruth::new(p[0], p[0], p[3], p[3]).unwrap()),
            ]
        })
    }

    /// Truncated values: core in the unit interval, support spilling out on
    /// one or both sides.
    pub fn truncated() -> impl Strategy<Value = FuzzyTruth> {
        (0.0f64..=1.0, 0.0f64..=1.0, 0.0f64..2.0, 0.0f64..2.0, 0u8..3).prop_map(
            |(x, y, left, right, side)| {
                let (b, c) = if x <= y { (x, y) } else { (y, x) };
                let (mut a, mut d) = (b - left.min(b), c + right.min(1.0 - c));
                match side {
                    0 => a = -0.01 - left,
                    1 => d = 1.01 + right,
                    _ => {
                        a = -0.01 - left;
                        d = 1.01 + right;
                    }
                }
                FuzzyTruth::new(a, b, c, d).unwrap()
            },
        )
    }

    pub fn any_value() -> impl Strategy<Value = FuzzyTruth> {
        prop_oneof![3 => restricted(), 1 => truncated()]
    }
}

#[cfg(test)]
mod tests {
    use super::strategies::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn make_classifies_and_flags() {
        let x = FuzzyTruth::new(0.4, 0.4, 0.4, 1.5).unwrap();
        assert!(x.is_truncated());
        assert_eq!(x.shape(), Shape::Triangular);
        assert_eq!(x.to_string(), "tfn(0.4,0.4,1.5)");

        let u = FuzzyTruth::new(0.0, 0.0, 1.0, 1.0).unwrap();
        assert!(u.is_restricted());
        assert_eq!(u.shape(), Shape::Interval);
        assert_eq!(u, FuzzyTruth::UNKNOWN);

        assert_eq!(
            FuzzyTruth::new(0.3, 0.2, 0.5, 0.7),
            Err(TruthError::OrderViolation(0.3, 0.2, 0.5, 0.7))
        );
        assert_eq!(
            FuzzyTruth::new(-0.5, -0.1, 0.5, 0.7),
            Err(TruthError::CoreOutOfRange(-0.1, 0.5))
        );
        assert_eq!(FuzzyTruth::new(0.0, f64::NAN, 0.5, 0.7), Err(TruthError::NotFinite));
    }

    #[test]
    fn doubly_semi_restricted_is_accepted() {
        let x = trfn(-2.0, 0.3, 0.9, 3.0);
        assert!(x.is_truncated());
        assert_eq!(x.shape(), Shape::Trapezoidal);
    }

    #[test]
    fn membership_examples() {
        assert!((trfn(0.2, 0.4, 0.6, 0.8).membership(0.3) - 0.5).abs() < 1e-12);
        assert_eq!(tfn(0.0, 0.5, 1.0).membership(0.5), 1.0);
        assert_eq!(tfn(0.4, 0.4, 1.5).membership(1.2), 0.0);
        assert!((tfn(0.4, 0.4, 1.5).membership(1.0) - 0.5 / 1.1).abs() < 1e-12);
    }

    #[test]
    fn degenerate_edges_take_plateau_value() {
        let x = ifn(0.2, 0.9);
        assert_eq!(x.membership(0.2), 1.0);
        assert_eq!(x.membership(0.9), 1.0);
        assert_eq!(x.membership(0.19), 0.0);
        assert_eq!(FuzzyTruth::point(0.5).unwrap().membership(0.5), 1.0);
    }

    #[test]
    fn alpha_cut_examples() {
        let cut = tfn(0.0, 0.5, 1.0).alpha_cut(0.5).unwrap();
        assert_eq!((cut.lower, cut.upper), (0.25, 0.75));
        let cut = ifn(0.2, 0.9).alpha_cut(0.7).unwrap();
        assert_eq!((cut.lower, cut.upper), (0.2, 0.9));
        let x = trfn(0.1, 0.3, 0.6, 0.95);
        let base = x.alpha_cut(0.0).unwrap();
        assert_eq!((base.lower, base.upper), (0.1, 0.95));
        assert_eq!(x.alpha_cut(1.2), Err(TruthError::AlphaOutOfRange(1.2)));
    }

    #[test]
    fn equality_examples() {
        assert!(ifn(0.3, 0.7).approx_eq(&trfn(0.3, 0.3, 0.7, 0.7), DEFAULT_TOL));
        let near = FuzzyTruth::new(0.0, 0.5, 0.5, 1.0 - 1e-12).unwrap();
        assert!(tfn(0.0, 0.5, 1.0).approx_eq(&near, DEFAULT_TOL));
        assert!(!ifn(0.0, 1.0).approx_eq(&ifn(1.0, 1.0), DEFAULT_TOL));
    }

    proptest! {
        #[test]
        fn roundtrip_parameters(p in prop::array::uniform4(-1.0f64..2.0)) {
            let mut p = p;
            p.sort_by(|x, y| x.partial_cmp(y).unwrap());
            if let Ok(x) = FuzzyTruth::new(p[0], p[1], p[2], p[3]) {
                prop_assert_eq!(x.params(), p);
            }
        }

        #[test]
        fn membership_bounded_and_normal(x in any_value(), v in -1.0f64..2.0) {
            let m = x.membership(v);
            prop_assert!((0.0..=1.0).contains(&m));
            if v < x.a().max(if x.is_truncated() { 0.0 } else { f64::MIN })
                || v > x.d().min(if x.is_truncated() { 1.0 } else { f64::MAX }) {
                prop_assert_eq!(m, 0.0);
            }
            prop_assert_eq!(x.membership(x.b()), 1.0);
            prop_assert_eq!(x.membership(x.c()), 1.0);
        }

        #[test]
        fn membership_is_convex(x in any_value(), v1 in 0.0f64..=1.0, v2 in 0.0f64..=1.0, l in 0.0f64..=1.0) {
            let mid = x.membership(l * v1 + (1.0 - l) * v2);
            prop_assert!(mid >= x.membership(v1).min(x.membership(v2)) - 1e-12);
        }

        #[test]
        fn alpha_cuts_are_nested(x in any_value(), a1 in 0.0f64..=1.0, a2 in 0.0f64..=1.0) {
            let (lo, hi) = if a1 <= a2 { (a1, a2) } else { (a2, a1) };
            let outer = x.alpha_cut(lo).unwrap();
            let inner = x.alpha_cut(hi).unwrap();
            prop_assert!(outer.lower <= inner.lower + 1e-12 && inner.upper <= outer.upper + 1e-12);
            prop_assert!(inner.lower <= inner.upper + 1e-12);
            let top = x.alpha_cut(1.0).unwrap();
            prop_assert!((top.lower - x.b()).abs() < 1e-12 && (top.upper - x.c()).abs() < 1e-12);
        }
    }
}

//! Answer set programming whose truth values are interval, triangular and
//! trapezoidal fuzzy numbers over `[0, 1]`.

pub mod connectives;
pub mod expr;
pub mod measures;
pub mod oracle;
pub mod program;
pub mod solver;
pub mod table;
pub mod truth;

pub use truth::{ifn, tfn, trfn, FuzzyTruth, Shape, DEFAULT_TOL};

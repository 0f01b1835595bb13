//! Every restricted value over the lattice `{0, 1/n, ..., 1}` with its truth
//! and uncertainty degrees, in floating point and as exact rationals.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::measures::Measure;
use crate::truth::{FuzzyTruth, Shape};

pub type Q = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("step must have the form 1/n with n >= 1, got `{0}`")]
    BadStep(String),
}

/// Parses `1/n` (or `1`) into `n`.
pub fn parse_step(s: &str) -> Result<i64, TableError> {
    let bad = || TableError::BadStep(s.to_string());
    let s = s.trim();
    let n = match s.split_once('/') {
        Some((num, den)) if num.trim() == "1" => den.trim().parse::<i64>().map_err(|_| bad())?,
        None if s == "1" => 1,
        _ => return Err(bad()),
    };
    if (1..=1000).contains(&n) {
        Ok(n)
    } else {
        Err(bad())
    }
}

/// Truth and uncertainty degree of a restricted value, in exact arithmetic.
pub fn exact_measures([a, b, c, d]: [Q; 4]) -> (Q, Q) {
    let two = Q::from_integer(2);
    let three = Q::from_integer(3);
    let width = d + c - b - a;
    if width == Q::from_integer(0) {
        return (b, width);
    }
    let t = (c * c + c * d + d * d - a * a - a * b - b * b) / (three * width);
    (t, width / two)
}

fn shape_name(shape: Shape) -> &'static str {
    match shape {
        Shape::Interval => "IFN",
        Shape::Triangular => "TFN",
        Shape::Trapezoidal => "TrFN",
    }
}

/// Row as printed in the published table of the `1/3` lattice.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reference {
    pub label: String,
    #[serde(skip)]
    pub params: [Q; 4],
    pub t: String,
    pub k: String,
    #[serde(skip)]
    t_q: Q,
    #[serde(skip)]
    k_q: Q,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub shape: &'static str,
    pub value: String,
    #[serde(skip)]
    pub params: [Q; 4],
    pub t_exact: String,
    pub k_exact: String,
    pub t: f64,
    pub k: f64,
    /// Published row this element corresponds to, if any.
    pub reference: Option<Reference>,
    /// Whether the published degrees disagree with the computed ones.
    pub flagged: bool,
}

fn q(num: i64, den: i64) -> Q {
    Q::new(num, den)
}

fn render_params(shape: Shape, [a, b, c, d]: [Q; 4]) -> String {
    match shape {
        Shape::Interval => format!("ifn({a},{d})"),
        Shape::Triangular => format!("tfn({a},{b},{d})"),
        Shape::Trapezoidal => format!("trfn({a},{b},{c},{d})"),
    }
}

/// The 29 published rows of the `1/3` lattice, parameters in thirds.
pub fn reference_rows() -> Vec<Reference> {
    let third = |p: [i64; 4]| p.map(|v| q(v, 3));
    // label, parameters, t and k as (numerator, denominator)
    type Published = (&'static str, [i64; 4], (i64, i64), (i64, i64));
    let rows: [Published; 29] = [
        ("IFN 1", [0, 0, 0, 0], (0, 1), (0, 1)),
        ("IFN 2", [1, 1, 1, 1], (1, 3), (0, 1)),
        ("IFN 3", [2, 2, 2, 2], (2, 3), (0, 1)),
        ("IFN 4", [3, 3, 3, 3], (1, 1), (0, 1)),
        ("IFN 5", [0, 0, 1, 1], (1, 6), (1, 3)),
        ("IFN 6", [0, 0, 2, 2], (1, 3), (2, 3)),
        ("IFN 7", [0, 0, 3, 3], (1, 2), (1, 1)),
        ("IFN 8", [1, 1, 2, 2], (1, 2), (1, 3)),
        ("IFN 9", [1, 1, 3, 3], (2, 3), (2, 3)),
        ("IFN 10", [2, 2, 3, 3], (5, 6), (1, 3)),
        ("TFN 1", [0, 1, 1, 3], (4, 9), (1, 2)),
        ("TFN 2", [0, 1, 1, 2], (1, 3), (1, 3)),
        ("TFN 3", [0, 2, 2, 3], (5, 9), (1, 2)),
        ("TFN 4", [0, 0, 0, 2], (2, 9), (1, 3)),
        ("TFN 5", [0, 0, 0, 3], (1, 3), (1, 2)),
        ("TFN 6", [1, 3, 3, 3], (7, 9), (1, 3)),
        ("TFN 7", [0, 3, 3, 3], (2, 3), (1, 2)),
        ("TFN 8", [1, 2, 2, 3], (2, 3), (1, 3)),
        ("TFN 9", [1, 1, 1, 3], (5, 9), (1, 3)),
        ("TFN 10", [0, 2, 2, 2], (4, 9), (1, 3)),
        ("TrFN 1", [0, 1, 2, 3], (1, 2), (2, 3)),
        ("TrFN 2", [0, 0, 1, 2], (7, 27), (1, 2)),
        ("TrFN 3", [0, 0, 2, 3], (19, 45), (5, 6)),
        ("TrFN 4", [1, 1, 2, 3], (16, 27), (1, 2)),
        ("TrFN 5", [0, 1, 3, 3], (26, 45), (5, 6)),
        ("TrFN 6", [0, 2, 3, 3], (23, 36), (2, 3)),
        ("TrFN 7", [1, 2, 3, 3], (20, 27), (1, 2)),
        ("TrFN 8", [0, 1, 2, 2], (11, 27), (1, 2)),
        ("TrFN 9", [0, 0, 1, 3], (13, 36), (2, 3)),
    ];
    rows.iter()
        .map(|&(label, p, (tn, td), (kn, kd))| Reference {
            label: label.to_string(),
            params: third(p),
            t: q(tn, td).to_string(),
            k: q(kn, kd).to_string(),
            t_q: q(tn, td),
            k_q: q(kn, kd),
        })
        .collect()
}

/// All restricted values over the lattice with step `1/n`: intervals, then
/// triangles, then trapezoids, each in lexicographic parameter order.
pub fn enumerate(n: i64) -> Vec<Row> {
    let refs = if n == 3 { reference_rows() } else { Vec::new() };
    let mut quads: Vec<[i64; 4]> = Vec::new();
    for a in 0..=n {
        for b in a..=n {
            for c in b..=n {
                for d in c..=n {
                    quads.push([a, b, c, d]);
                }
            }
        }
    }
    let mut rows: Vec<Row> = quads
        .into_iter()
        .filter_map(|p| {
            let params = p.map(|v| q(v, n));
            let value = FuzzyTruth::new(
                p[0] as f64 / n as f64,
                p[1] as f64 / n as f64,
                p[2] as f64 / n as f64,
                p[3] as f64 / n as f64,
            )
            .ok()?;
            let shape = value.shape();
            let (t_q, k_q) = exact_measures(params);
            let m = Measure::of(&value);
            let reference = refs.iter().find(|r| r.params == params).cloned();
            let flagged = reference
                .as_ref()
                .is_some_and(|r| r.t_q != t_q || r.k_q != k_q);
            Some(Row {
                shape: shape_name(shape),
                value: render_params(shape, params),
                params,
                t_exact: t_q.to_string(),
                k_exact: k_q.to_string(),
                t: m.t,
                k: m.k,
                reference,
                flagged,
            })
        })
        .collect();
    rows.sort_by_key(|r| match r.shape {
        "IFN" => 0,
        "TFN" => 1,
        _ => 2,
    });
    rows
}

/// Fixed-width rendering, one element per line, followed by a summary of
/// the published rows found.
pub struct Rendered<'a>(pub &'a [Row]);

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<5} {:<24} {:>8} {:>8} {:>22} {:>22}  published",
            "shape", "value", "t", "k", "t (f64)", "k (f64)"
        )?;
        for r in self.0 {
            let note = match &r.reference {
                None => String::new(),
                Some(p) if r.flagged => format!("{} MISMATCH table=({}, {})", p.label, p.t, p.k),
                Some(p) => p.label.clone(),
            };
            let line = format!(
                "{:<5} {:<24} {:>8} {:>8} {:>22} {:>22}  {}",
                r.shape,
                r.value,
                r.t_exact,
                r.k_exact,
                format!("{:?}", r.t),
                format!("{:?}", r.k),
                note
            );
            writeln!(f, "{}", line.trim_end())?;
        }
        let published = self.0.iter().filter(|r| r.reference.is_some()).count();
        let flagged = self.0.iter().filter(|r| r.flagged).count();
        if published > 0 {
            writeln!(f, "published rows: {published} found, {flagged} flagged")?;
        }
        Ok(())
    }
}

//! Numerical yardsticks for the closed forms: adaptive quadrature of the
//! membership function, Monte Carlo estimates of `Prob(p <= q)`, and
//! enumeration of the values reachable from a set of weights.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::connectives::{conj, disj, kagg, naf, negate};
use crate::measures::density;
use crate::truth::FuzzyTruth;

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const QUADRATURE_TOL: f64 = 1e-8;
pub const MAX_CLOSURE_DEPTH: usize = 4;
pub const DEFAULT_CLOSURE_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("quadrature did not reach tolerance {tol} on [{lo}, {hi}]")]
    QuadratureFailure { lo: f64, hi: f64, tol: f64 },
    #[error("{0} has no uncertainty mass")]
    ZeroMass(FuzzyTruth),
    #[error("closure exceeded {cap} values")]
    ClosureTooLarge { cap: usize },
    #[error("closure depth {0} exceeds the limit of {MAX_CLOSURE_DEPTH}")]
    DepthTooLarge(usize),
}

// 5-point Gauss-Legendre on [-1, 1]
const GL_NODES: [f64; 5] = [
    0.0,
    -0.538_469_310_105_683_1,
    0.538_469_310_105_683_1,
    -0.906_179_845_938_664,
    0.906_179_845_938_664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
    0.236_926_885_056_189_1,
];

fn gauss(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let (mid, half) = ((lo + hi) / 2.0, (hi - lo) / 2.0);
    half * GL_NODES
        .iter()
        .zip(GL_WEIGHTS)
        .map(|(x, w)| w * f(mid + half * x))
        .sum::<f64>()
}

fn adaptive(f: &impl Fn(f64) -> f64, lo: f64, hi: f64, whole: f64, tol: f64, depth: u32) -> Result<f64, OracleError> {
    let mid = (lo + hi) / 2.0;
    let (left, right) = (gauss(f, lo, mid), gauss(f, mid, hi));
    if (left + right - whole).abs() <= tol {
        return Ok(left + right);
    }
    if depth == 0 {
        return Err(OracleError::QuadratureFailure { lo, hi, tol });
    }
    Ok(adaptive(f, lo, mid, left, tol / 2.0, depth - 1)? + adaptive(f, mid, hi, right, tol / 2.0, depth - 1)?)
}

/// Adaptive Gauss-Legendre quadrature of `f` over `[lo, hi]`. Nodes are
/// interior, so jumps at the endpoints are never sampled.
pub fn integrate(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64, OracleError> {
    if hi <= lo {
        return Ok(0.0);
    }
    adaptive(&f, lo, hi, gauss(&f, lo, hi), tol, 40)
}

/// Breakpoints of the membership function inside `[0, 1]`.
fn kinks(x: &FuzzyTruth) -> Vec<f64> {
    let mut pts: Vec<f64> = [0.0, 1.0]
        .into_iter()
        .chain(x.params())
        .filter(|v| (0.0..=1.0).contains(v))
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

fn integrate_pieces(x: &FuzzyTruth, f: impl Fn(f64) -> f64) -> Result<f64, OracleError> {
    let pts = kinks(x);
    let tol = QUADRATURE_TOL / pts.len() as f64;
    pts.windows(2)
        .map(|w| integrate(&f, w[0], w[1], tol))
        .sum()
}

/// Area under the membership function over `[0, 1]`, by quadrature.
pub fn membership_area(x: &FuzzyTruth) -> Result<f64, OracleError> {
    integrate_pieces(x, |v| x.membership(v))
}

/// Integral of the closed-form density over `[0, 1]`; 1 for every value
/// with positive uncertainty.
pub fn density_mass(x: &FuzzyTruth) -> Result<f64, OracleError> {
    integrate_pieces(x, |v| density(x, v))
}

/// Mean of the normalised membership function, from two quadratures that
/// share nothing with the closed forms.
pub fn integrate_density_mean(x: &FuzzyTruth) -> Result<f64, OracleError> {
    let area = membership_area(x)?;
    if area <= QUADRATURE_TOL {
        return Err(OracleError::ZeroMass(*x));
    }
    Ok(integrate_pieces(x, |v| v * x.membership(v))? / area)
}

/// Linear piece of the membership function restricted to `[0, 1]`.
#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    mu_lo: f64,
    mu_hi: f64,
}

impl Segment {
    fn mass(&self) -> f64 {
        (self.hi - self.lo) * (self.mu_lo + self.mu_hi) / 2.0
    }

    /// Point below which the segment holds mass `target`: the root of the
    /// quadratic partial area, in the form that stays stable for flat
    /// pieces.
    fn invert(&self, target: f64) -> f64 {
        let slope = (self.mu_hi - self.mu_lo) / (self.hi - self.lo);
        let disc = (self.mu_lo * self.mu_lo + 2.0 * slope * target).max(0.0);
        let denom = self.mu_lo + disc.sqrt();
        let u = if denom > 0.0 { 2.0 * target / denom } else { 0.0 };
        (self.lo + u).clamp(self.lo, self.hi)
    }
}

/// Inverse-CDF sampler for the density of a fuzzy truth value.
#[derive(Debug, Clone)]
pub struct Sampler {
    segments: Vec<Segment>,
    cumulative: Vec<f64>,
    point: Option<f64>,
}

impl Sampler {
    pub fn new(x: &FuzzyTruth) -> Self {
        let [a, b, c, d] = x.params();
        let mut segments = Vec::new();
        let mu = |v: f64, lo: f64, hi: f64, rising: bool| {
            if hi <= lo {
                1.0
            } else if rising {
                (v - lo) / (hi - lo)
            } else {
                (hi - v) / (hi - lo)
            }
        };
        let (l, r) = (a.max(0.0), b);
        if r > l {
            segments.push(Segment {
                lo: l,
                hi: r,
                mu_lo: mu(l, a, b, true),
                mu_hi: 1.0,
            });
        }
        if c > b {
            segments.push(Segment {
                lo: b,
                hi: c,
                mu_lo: 1.0,
                mu_hi: 1.0,
            });
        }
        let (l, r) = (c, d.min(1.0));
        if r > l {
            segments.push(Segment {
                lo: l,
                hi: r,
                mu_lo: 1.0,
                mu_hi: mu(r, c, d, false),
            });
        }
        let mut total = 0.0;
        let cumulative = segments
            .iter()
            .map(|s| {
                total += s.mass();
                total
            })
            .collect();
        let point = (total <= 0.0).then_some(b);
        Sampler {
            segments,
            cumulative,
            point,
        }
    }

    pub fn sample(&self, rng: &mut impl Rng) -> f64 {
        if let Some(p) = self.point {
            return p;
        }
        let total = *self.cumulative.last().expect("non-empty");
        let target = rng.gen::<f64>() * total;
        let i = self
            .cumulative
            .iter()
            .position(|&cum| target < cum)
            .unwrap_or(self.segments.len() - 1);
        let before = if i == 0 { 0.0 } else { self.cumulative[i - 1] };
        self.segments[i].invert(target - before)
    }
}

/// Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Estimate {
    pub p: f64,
    pub std_err: f64,
    pub samples: usize,
}

/// `Prob(p <= q)` for independent `p` and `q` distributed by the densities
/// of `x` and `y`.
pub fn prob_leq(x: &FuzzyTruth, y: &FuzzyTruth, samples: usize, seed: u64) -> Estimate {
    let (sx, sy) = (Sampler::new(x), Sampler::new(y));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hits = (0..samples)
        .filter(|_| sx.sample(&mut rng) <= sy.sample(&mut rng))
        .count();
    let n = samples.max(1) as f64;
    let p = hits as f64 / n;
    Estimate {
        p,
        std_err: (p * (1.0 - p) / n).sqrt(),
        samples,
    }
}

/// Hash key that identifies values equal to within about 1e-9.
fn quantize(x: &FuzzyTruth) -> ([i64; 4], bool) {
    let [a, b, c, d] = x.params();
    let q = |v: f64| (v * 1e9).round() as i64;
    ([q(a), q(b), q(c), q(d)], x.is_truncated())
}

/// Values reachable from `weights` by at most `depth` applications of
/// conj, disj, negate, naf and kagg. Aggregation ties contribute nothing.
pub fn closure_enumerate(weights: &[FuzzyTruth], depth: usize) -> Result<Vec<FuzzyTruth>, OracleError> {
    closure_enumerate_capped(weights, depth, DEFAULT_CLOSURE_CAP)
}

pub fn closure_enumerate_capped(
    weights: &[FuzzyTruth],
    depth: usize,
    cap: usize,
) -> Result<Vec<FuzzyTruth>, OracleError> {
    if depth > MAX_CLOSURE_DEPTH {
        return Err(OracleError::DepthTooLarge(depth));
    }
    let mut keys = HashSet::new();
    let mut all: Vec<FuzzyTruth> = Vec::new();
    let mut push = |v: FuzzyTruth, all: &mut Vec<FuzzyTruth>| -> Result<bool, OracleError> {
        if !keys.insert(quantize(&v)) {
            return Ok(false);
        }
        if all.len() >= cap {
            return Err(OracleError::ClosureTooLarge { cap });
        }
        all.push(v);
        Ok(true)
    };
    for w in weights {
        push(*w, &mut all)?;
    }
    // values in all[frontier..] were added in the previous round
    let mut frontier = 0;
    for _ in 0..depth {
        let known = all.len();
        let mut fresh = Vec::new();
        for i in frontier..known {
            let x = all[i];
            fresh.push(negate(&x));
            fresh.push(naf(&x));
            for (j, &y) in all.iter().enumerate().take(known) {
                if j >= frontier && j < i {
                    continue;
                }
                fresh.push(conj(&x, &y));
                fresh.push(conj(&y, &x));
                fresh.push(disj(&x, &y));
                fresh.push(disj(&y, &x));
                fresh.extend(kagg(&x, &y).ok());
            }
        }
        for v in fresh {
            push(v, &mut all)?;
        }
        if all.len() == known {
            break;
        }
        frontier = known;
    }
    Ok(all)
}

//! Exhaustive searches over the free parameters of a bound: the shadow
//! multiplier `k`, the trade-off `alpha` and the chaining level `j`.
//!
//! Sweeps evaluate every grid point (in parallel) and reduce
//! deterministically: the minimum value wins and ties go to the smallest
//! parameter.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    chain_coefficients, solve_chained, Alpha, BoundInput, BoundKind, BoundResult, Level,
};
use crate::complexity::LevelEntropy;
use crate::error::{BoundError, Result};

/// Width of the reported plateau around the optimum.
pub const PLATEAU_TOLERANCE: f64 = 1e-6;

/// Result of a parameter search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Optimum<P> {
    pub best_value: f64,
    /// Exact minimiser, smallest parameter on ties.
    pub argmin: P,
    /// Parameters whose value lies within [`PLATEAU_TOLERANCE`] of the best.
    pub plateau: Vec<P>,
    /// Every successfully evaluated point, in parameter order.
    pub evaluations: Vec<(P, f64)>,
}

impl<P: Copy + PartialOrd> Optimum<P> {
    fn from_evaluations(evaluations: Vec<(P, f64)>) -> Option<Self> {
        let (argmin, best_value) =
            evaluations
                .iter()
                .copied()
                .fold(None::<(P, f64)>, |acc, (p, v)| match acc {
                    Some((_, bv)) if bv <= v => acc,
                    _ => Some((p, v)),
                })?;
        let plateau = evaluations
            .iter()
            .filter(|(_, v)| *v <= best_value + PLATEAU_TOLERANCE)
            .map(|(p, _)| *p)
            .collect();
        Some(Optimum {
            best_value,
            argmin,
            plateau,
            evaluations,
        })
    }

    /// Parameters whose value lies within `tol` of the best.
    pub fn plateau_within(&self, tol: f64) -> Vec<P> {
        self.below_or_at(self.best_value + tol)
    }

    /// Parameters whose value is `<= threshold`.
    pub fn below_or_at(&self, threshold: f64) -> Vec<P> {
        self.evaluations
            .iter()
            .filter(|(_, v)| *v <= threshold)
            .map(|(p, _)| *p)
            .collect()
    }

    /// Parameters whose value is strictly below `threshold`.
    pub fn below(&self, threshold: f64) -> Vec<P> {
        self.evaluations
            .iter()
            .filter(|(_, v)| *v < threshold)
            .map(|(p, _)| *p)
            .collect()
    }

    /// Parameters that achieve the best value once it is rounded up to
    /// `decimals` places, i.e. those for which the printed bound
    /// `B <= ceil(best)` still holds.
    pub fn printed_plateau(&self, decimals: i32) -> Vec<P> {
        let scale = 10f64.powi(decimals);
        self.below_or_at((self.best_value * scale).ceil() / scale)
    }
}

fn collect_optimum<P: Copy + PartialOrd + Send>(
    points: Vec<(P, Result<f64>)>,
) -> Result<Optimum<P>> {
    let mut last_err = None;
    let mut evaluations = Vec::with_capacity(points.len());
    for (p, r) in points {
        match r {
            Ok(v) => evaluations.push((p, v)),
            Err(e) => last_err = Some(e),
        }
    }
    Optimum::from_evaluations(evaluations).ok_or_else(|| {
        BoundError::SweepFailed(Box::new(last_err.unwrap_or(BoundError::EmptyRange)))
    })
}

/// Exhaustive scan of `k = 1..=k_max`.
pub fn optimize_k(kind: &BoundKind, input: &BoundInput, k_max: u64) -> Result<Optimum<u64>> {
    if k_max == 0 {
        return Err(BoundError::invalid("k-max", "must be >= 1"));
    }
    let points: Vec<(u64, Result<f64>)> = (1..=k_max)
        .into_par_iter()
        .map(|k| (k, kind.evaluate(&input.with_k(k)).map(|r| r.value)))
        .collect();
    collect_optimum(points)
}

/// `round(2 ln(e N / h))`, at least 1: a cheap approximate minimiser of
/// `(1 + 1/k)^2 ln(e (k+1) N / h)`.
pub fn heuristic_k(n: u64, h: u32) -> u64 {
    let v = 2.0 * (std::f64::consts::E * n as f64 / h as f64).ln();
    (v.round() as i64).max(1) as u64
}

/// `count` log-spaced points in `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..count)
                .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
                .collect()
        }
    }
}

/// 40 log-spaced points in `[1e-3, 10]`.
pub fn default_alpha_grid() -> Vec<f64> {
    log_grid(1e-3, 10.0, 40)
}

/// Minimises over `alpha` in `grid`, always including the closed-form
/// choices `sqrt(pi/d)/2`, `d^(-1/2)` and `1`.
pub fn optimize_alpha(kind: &BoundKind, input: &BoundInput, grid: &[f64]) -> Result<Optimum<f64>> {
    if grid.is_empty() {
        return Err(BoundError::EmptyRange);
    }
    let named = [Alpha::Auto, Alpha::InvSqrtD]
        .into_iter()
        .map(|a| {
            kind.with_alpha(a)?
                .evaluate(input)
                .map(|r| r.get("alpha").expect("alpha-bearing bounds record alpha"))
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut alphas: Vec<f64> = grid.iter().copied().chain(named).chain([1.0]).collect();
    alphas.sort_by(f64::total_cmp);
    alphas.dedup();
    let points: Vec<(f64, Result<f64>)> = alphas
        .into_par_iter()
        .map(|a| {
            let v = kind
                .with_alpha(Alpha::Value(a))
                .and_then(|kd| kd.evaluate(input))
                .map(|r| r.value);
            (a, v)
        })
        .collect();
    collect_optimum(points)
}

/// Two-dimensional sweep of the chained relative bound over
/// `k = 1..=k_max` and every available level `j`.
pub fn optimize_kj(input: &BoundInput, k_max: u64) -> Result<Optimum<(u64, u32)>> {
    optimize_kj_with(input, k_max, LevelEntropy::default())
}

pub fn optimize_kj_with(
    input: &BoundInput,
    k_max: u64,
    entropy: LevelEntropy,
) -> Result<Optimum<(u64, u32)>> {
    if k_max == 0 {
        return Err(BoundError::invalid("k-max", "must be >= 1"));
    }
    type Scored = ((u64, u32), f64);
    let per_k: Vec<Result<Vec<Scored>>> = (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let inp = input.with_k(k);
            let coeffs = chain_coefficients(&inp, entropy)?;
            Ok(coeffs
                .iter()
                .filter_map(|c| {
                    solve_chained(inp.r1, k as f64, c.a, c.b, c.xi).map(|v| ((k, c.j), v))
                })
                .collect())
        })
        .collect();
    let mut points = Vec::new();
    let mut last_err = None;
    for r in per_k {
        match r {
            Ok(v) => points.extend(v.into_iter().map(|(p, v)| (p, Ok(v)))),
            Err(e) => last_err = Some(e),
        }
    }
    if points.is_empty() {
        return Err(BoundError::SweepFailed(Box::new(
            last_err.unwrap_or(BoundError::NoCertifiedLevel { tried: Vec::new() }),
        )));
    }
    collect_optimum(points)
}

/// Which input or parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    K,
    Alpha,
    J,
    R1,
}

impl std::str::FromStr for SweepParameter {
    type Err = BoundError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "k" => Ok(SweepParameter::K),
            "alpha" => Ok(SweepParameter::Alpha),
            "j" => Ok(SweepParameter::J),
            "r1" => Ok(SweepParameter::R1),
            _ => Err(BoundError::invalid(
                "vary",
                format!("unknown parameter `{s}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Step(f64),
    Count(usize),
}

/// A one-dimensional sweep over an inclusive range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub from: f64,
    pub to: f64,
    pub spacing: Spacing,
    pub bound: BoundKind,
}

impl SweepSpec {
    /// Grid points, in increasing order.
    pub fn points(&self) -> Result<Vec<f64>> {
        let (from, to) = (self.from, self.to);
        if !(from.is_finite() && to.is_finite()) || from > to {
            return Err(BoundError::EmptyRange);
        }
        let pts: Vec<f64> = match self.spacing {
            Spacing::Step(step) => {
                if !(step > 0.0) {
                    return Err(BoundError::invalid("step", "must be > 0"));
                }
                let n = ((to - from) / step + 1e-9).floor() as usize;
                (0..=n).map(|i| from + i as f64 * step).collect()
            }
            Spacing::Count(0) => return Err(BoundError::EmptyRange),
            Spacing::Count(1) => vec![from],
            Spacing::Count(c) => (0..c)
                .map(|i| from + (to - from) * i as f64 / (c - 1) as f64)
                .collect(),
        };
        match self.parameter {
            SweepParameter::K | SweepParameter::J => {
                if pts.iter().any(|p| p.fract() != 0.0 || *p < 1.0) {
                    return Err(BoundError::invalid(
                        "vary",
                        "k and j ranges must consist of positive integers",
                    ));
                }
            }
            SweepParameter::Alpha => {
                if pts.iter().any(|p| *p <= 0.0) {
                    return Err(BoundError::invalid("vary", "alpha range must be positive"));
                }
            }
            SweepParameter::R1 => {
                if pts.iter().any(|p| !(0.0..=1.0).contains(p)) {
                    return Err(BoundError::invalid("vary", "r1 range must lie in [0, 1]"));
                }
            }
        }
        Ok(pts)
    }

    fn configure(&self, input: &BoundInput, p: f64) -> Result<(BoundKind, BoundInput)> {
        Ok(match self.parameter {
            SweepParameter::K => (self.bound, input.with_k(p as u64)),
            SweepParameter::R1 => (self.bound, input.with_r1(p)),
            SweepParameter::Alpha => (self.bound.with_alpha(Alpha::Value(p))?, *input),
            SweepParameter::J => match self.bound {
                BoundKind::RelativeChained { .. } => {
                    (self.bound.with_level(Level::Fixed(p as u32)), *input)
                }
                other => {
                    return Err(BoundError::invalid(
                        "vary",
                        format!("{} has no chaining level", other.theorem()),
                    ))
                }
            },
        })
    }
}

/// One row of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub parameter: f64,
    pub input: BoundInput,
    pub result: Result<BoundResult>,
}

/// Evaluates the bound at every grid point, in grid order.
pub fn sweep(spec: &SweepSpec, input: &BoundInput) -> Result<Vec<SweepPoint>> {
    let pts = spec.points()?;
    // surface configuration errors (e.g. alpha on a bound without one) up front
    spec.configure(input, pts[0])?;
    Ok(pts
        .into_par_iter()
        .map(|p| {
            let (kind, inp) = spec.configure(input, p).expect("validated above");
            SweepPoint {
                parameter: p,
                input: inp,
                result: kind.evaluate(&inp),
            }
        })
        .collect())
}

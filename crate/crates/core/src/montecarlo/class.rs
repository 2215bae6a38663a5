//! Small enumerable hypothesis classes on the unit interval.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::complexity::sauer_log_growth;
use crate::error::{BoundError, Result};

/// A finite classifier family whose restriction patterns can be enumerated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HypothesisClass {
    /// `x -> [x >= t]` for every `t` in a sorted grid. VC dimension 1.
    Thresholds1D { thresholds: Vec<f64> },
    /// `x -> [a <= x <= b]` for every `a <= b` in a sorted grid. VC dimension 2.
    Intervals1D { endpoints: Vec<f64> },
    /// Label vectors given directly over a fixed design, indexed by position.
    ExplicitFinite { labelings: Vec<Vec<bool>> },
}

/// One member of a [`HypothesisClass`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Member<'a> {
    Threshold(f64),
    Interval(f64, f64),
    Row(&'a [bool]),
}

impl Member<'_> {
    pub fn predict(&self, index: usize, x: f64) -> bool {
        match *self {
            Member::Threshold(t) => x >= t,
            Member::Interval(a, b) => a <= x && x <= b,
            Member::Row(row) => row[index],
        }
    }
}

fn uniform_grid(size: usize) -> Vec<f64> {
    match size {
        0 => Vec::new(),
        1 => vec![0.5],
        _ => (0..size).map(|i| i as f64 / (size - 1) as f64).collect(),
    }
}

impl HypothesisClass {
    /// Thresholds at `i / (size - 1)`, `i = 0..size`.
    pub fn thresholds(size: usize) -> Self {
        HypothesisClass::Thresholds1D {
            thresholds: uniform_grid(size),
        }
    }

    /// Intervals with endpoints on `i / (size - 1)`, `i = 0..size`.
    pub fn intervals(size: usize) -> Self {
        HypothesisClass::Intervals1D {
            endpoints: uniform_grid(size),
        }
    }

    pub fn explicit(labelings: Vec<Vec<bool>>) -> Self {
        HypothesisClass::ExplicitFinite { labelings }
    }

    pub fn name(&self) -> &'static str {
        match self {
            HypothesisClass::Thresholds1D { .. } => "thresholds",
            HypothesisClass::Intervals1D { .. } => "intervals",
            HypothesisClass::ExplicitFinite { .. } => "explicit",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let sorted =
            |g: &[f64]| g.windows(2).all(|w| w[0] <= w[1]) && g.iter().all(|v| v.is_finite());
        match self {
            HypothesisClass::Thresholds1D { thresholds: g }
            | HypothesisClass::Intervals1D { endpoints: g } => {
                if g.is_empty() || !sorted(g) {
                    return Err(BoundError::invalid(
                        "class",
                        "grid must be nonempty, finite and sorted",
                    ));
                }
            }
            HypothesisClass::ExplicitFinite { labelings } => {
                let len = labelings.first().map(Vec::len);
                if len.is_none() || labelings.iter().any(|r| Some(r.len()) != len) {
                    return Err(BoundError::invalid(
                        "class",
                        "explicit labelings must be nonempty and of equal length",
                    ));
                }
            }
        }
        Ok(())
    }

    /// Number of classifiers.
    pub fn size(&self) -> usize {
        match self {
            HypothesisClass::Thresholds1D { thresholds } => thresholds.len(),
            HypothesisClass::Intervals1D { endpoints } => {
                endpoints.len() * (endpoints.len() + 1) / 2
            }
            HypothesisClass::ExplicitFinite { labelings } => labelings.len(),
        }
    }

    pub fn vc_dim(&self) -> Option<u32> {
        match self {
            HypothesisClass::Thresholds1D { .. } => Some(1),
            HypothesisClass::Intervals1D { .. } => Some(2),
            HypothesisClass::ExplicitFinite { .. } => None,
        }
    }

    pub fn members(&self) -> Vec<Member<'_>> {
        match self {
            HypothesisClass::Thresholds1D { thresholds } => {
                thresholds.iter().map(|&t| Member::Threshold(t)).collect()
            }
            HypothesisClass::Intervals1D { endpoints } => endpoints
                .iter()
                .enumerate()
                .flat_map(|(i, &a)| endpoints[i..].iter().map(move |&b| Member::Interval(a, b)))
                .collect(),
            HypothesisClass::ExplicitFinite { labelings } => {
                labelings.iter().map(|r| Member::Row(r)).collect()
            }
        }
    }

    /// Upper bound on the natural log of the number of distinct patterns the
    /// class can induce on any design of `m` points.
    pub fn max_log_patterns(&self, m: u64) -> f64 {
        let m = m as f64;
        let count = match self {
            HypothesisClass::Thresholds1D { thresholds } => (thresholds.len() as f64).min(m + 1.0),
            HypothesisClass::Intervals1D { endpoints } => {
                let g = endpoints.len() as f64;
                (1.0 + g * (g + 1.0) / 2.0).min(1.0 + m * (m + 1.0) / 2.0)
            }
            HypothesisClass::ExplicitFinite { labelings } => {
                labelings.iter().collect::<HashSet<_>>().len() as f64
            }
        };
        count.ln()
    }
}

/// Distinct restriction patterns of `class` on `design`, by brute force.
pub fn effective_class(class: &HypothesisClass, design: &[f64]) -> Result<BTreeSet<Vec<bool>>> {
    class.validate()?;
    if design.is_empty() {
        return Err(BoundError::invalid("design", "must be nonempty"));
    }
    if let HypothesisClass::ExplicitFinite { labelings } = class {
        if labelings[0].len() != design.len() {
            return Err(BoundError::invalid(
                "design",
                format!(
                    "explicit class is defined on {} points, design has {}",
                    labelings[0].len(),
                    design.len()
                ),
            ));
        }
    }
    Ok(class
        .members()
        .iter()
        .map(|m| {
            design
                .iter()
                .enumerate()
                .map(|(i, &x)| m.predict(i, x))
                .collect()
        })
        .collect())
}

/// Training and shadow error counts of one effective-class member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternErrors {
    pub train: u32,
    pub shadow: u32,
}

/// Counts of label-1 and label-0 points split by training / shadow block,
/// accumulated along the sorted design.
struct Prefix {
    // [train ones, train zeros, shadow ones, shadow zeros]
    acc: Vec<[u32; 4]>,
}

impl Prefix {
    fn new(order: &[usize], ys: &[bool], n: usize) -> Self {
        let mut acc = Vec::with_capacity(order.len() + 1);
        let mut cur = [0u32; 4];
        acc.push(cur);
        for &i in order {
            let slot = match (i < n, ys[i]) {
                (true, true) => 0,
                (true, false) => 1,
                (false, true) => 2,
                (false, false) => 3,
            };
            cur[slot] += 1;
            acc.push(cur);
        }
        Prefix { acc }
    }

    /// Counts over sorted positions `lo..hi`.
    fn range(&self, lo: usize, hi: usize) -> [u32; 4] {
        let (a, b) = (self.acc[lo], self.acc[hi]);
        [b[0] - a[0], b[1] - a[1], b[2] - a[2], b[3] - a[3]]
    }

    fn total(&self) -> [u32; 4] {
        *self.acc.last().expect("prefix is never empty")
    }
}

/// Error counts for every member of the effective class on a labelled
/// design whose first `n` points form the training sample, one entry per
/// distinct restriction pattern.
///
/// Threshold and interval classes are handled in `O(m log m + grid)` by
/// sorting the design; explicit classes are deduplicated directly.
pub fn pattern_errors(
    class: &HypothesisClass,
    xs: &[f64],
    ys: &[bool],
    n: usize,
) -> Result<Vec<PatternErrors>> {
    class.validate()?;
    if xs.len() != ys.len() || n == 0 || n > xs.len() {
        return Err(BoundError::invalid("design", "inconsistent sample sizes"));
    }
    let out = match class {
        HypothesisClass::Thresholds1D { thresholds } => {
            let (sorted, prefix) = sort_design(xs, ys, n);
            let mut cuts: Vec<usize> = thresholds
                .iter()
                .map(|&t| sorted.partition_point(|&x| x < t))
                .collect();
            cuts.dedup();
            let total = prefix.total();
            cuts.into_iter()
                .map(|c| {
                    // below the cut predicts 0, so ones are errors; above predicts 1
                    let below = prefix.range(0, c);
                    PatternErrors {
                        train: below[0] + (total[1] - below[1]),
                        shadow: below[2] + (total[3] - below[3]),
                    }
                })
                .collect()
        }
        HypothesisClass::Intervals1D { endpoints } => {
            let (sorted, prefix) = sort_design(xs, ys, n);
            let lo: Vec<usize> = endpoints
                .iter()
                .map(|&a| sorted.partition_point(|&x| x < a))
                .collect();
            let hi: Vec<usize> = endpoints
                .iter()
                .map(|&b| sorted.partition_point(|&x| x <= b))
                .collect();
            let has_empty = lo.iter().zip(&hi).any(|(l, h)| h <= l);
            let mut los = lo;
            los.dedup();
            let mut his = hi;
            his.dedup();
            let total = prefix.total();
            let mut out = Vec::new();
            if has_empty {
                out.push(PatternErrors {
                    train: total[0],
                    shadow: total[2],
                });
            }
            for &l in &los {
                for &h in his.iter().filter(|&&h| h > l) {
                    let inside = prefix.range(l, h);
                    out.push(PatternErrors {
                        train: total[0] - inside[0] + inside[1],
                        shadow: total[2] - inside[2] + inside[3],
                    });
                }
            }
            out
        }
        HypothesisClass::ExplicitFinite { labelings } => {
            if labelings[0].len() != xs.len() {
                return Err(BoundError::invalid(
                    "design",
                    "explicit class length does not match the design",
                ));
            }
            let distinct: HashSet<&Vec<bool>> = labelings.iter().collect();
            distinct
                .into_iter()
                .map(|row| {
                    let mut e = PatternErrors {
                        train: 0,
                        shadow: 0,
                    };
                    for (i, (&p, &y)) in row.iter().zip(ys).enumerate() {
                        if p != y {
                            if i < n {
                                e.train += 1;
                            } else {
                                e.shadow += 1;
                            }
                        }
                    }
                    e
                })
                .collect()
        }
    };
    Ok(out)
}

fn sort_design(xs: &[f64], ys: &[bool], n: usize) -> (Vec<f64>, Prefix) {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let sorted = order.iter().map(|&i| xs[i]).collect();
    (sorted, Prefix::new(&order, ys, n))
}

/// `ln |effective class| <= sauer(vc, m)` for the classes with a known VC
/// dimension.
pub fn within_sauer(class: &HypothesisClass, log_count: f64, m: u64) -> bool {
    match class.vc_dim() {
        Some(h) => log_count <= sauer_log_growth(h, m) + 1e-12,
        None => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_patterns() {
        let class = HypothesisClass::thresholds(200);
        let design = [0.11, 0.52, 0.93];
        assert_eq!(effective_class(&class, &design).unwrap().len(), 4);
    }

    #[test]
    fn interval_patterns_match_formula() {
        let class = HypothesisClass::intervals(201);
        for m in 1..=12usize {
            // well separated from the grid and from each other
            let design: Vec<f64> = (0..m).map(|i| (i as f64 + 0.5) / 13.0 + 0.001).collect();
            let count = effective_class(&class, &design).unwrap().len();
            assert_eq!(count, 1 + m * (m + 1) / 2, "m = {m}");
        }
    }

    #[test]
    fn explicit_class_deduplicates() {
        let rows = vec![
            vec![true, false, true],
            vec![true, false, true],
            vec![false, false, false],
        ];
        let class = HypothesisClass::explicit(rows);
        assert_eq!(effective_class(&class, &[0.1, 0.2, 0.3]).unwrap().len(), 2);
        assert!(effective_class(&class, &[0.1, 0.2]).is_err());
        assert!((class.max_log_patterns(3) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn empty_design_is_rejected() {
        assert!(effective_class(&HypothesisClass::thresholds(5), &[]).is_err());
    }

    #[test]
    fn thresholds_never_exceed_sauer() {
        let class = HypothesisClass::thresholds(500);
        for m in 1..=200usize {
            let design: Vec<f64> = (0..m).map(|i| (i as f64 * 0.618_034).fract()).collect();
            let count = effective_class(&class, &design).unwrap().len() as f64;
            assert!(within_sauer(&class, count.ln(), m as u64), "m = {m}");
        }
    }
}

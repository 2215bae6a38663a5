//! Partially exchangeable data generators on `[0, 1]`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{BoundError, Result};

/// Law of the input at training index `i`; shadow copy `i + m N` always
/// shares the law of index `i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "supports", rename_all = "snake_case")]
pub enum InputLaw {
    /// Every index is `U[0, 1]`.
    Uniform,
    /// Index `i` is `U[a, b]` with `(a, b) = supports[i mod len]`.
    IndexDependent(Vec<(f64, f64)>),
}

impl InputLaw {
    /// Four interleaved supports of width 0.7 starting at 0, 0.1, 0.2, 0.3.
    pub fn staggered() -> Self {
        InputLaw::IndexDependent(
            (0..4)
                .map(|s| (0.1 * s as f64, 0.1 * s as f64 + 0.7))
                .collect(),
        )
    }

    fn support(&self, i: usize) -> (f64, f64) {
        match self {
            InputLaw::Uniform => (0.0, 1.0),
            InputLaw::IndexDependent(s) => s[i % s.len()],
        }
    }
}

/// Noise-free labelling rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    /// Label 1 iff `x >= t`.
    Threshold { t: f64 },
    /// Label 1 iff `a <= x <= b`.
    Interval { a: f64, b: f64 },
}

impl Target {
    pub fn label(&self, x: f64) -> bool {
        match *self {
            Target::Threshold { t } => x >= t,
            Target::Interval { a, b } => a <= x && x <= b,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataModel {
    pub inputs: InputLaw,
    pub target: Target,
    /// Symmetric label-flip probability in `[0, 1/2)`.
    pub noise: f64,
}

/// One draw of the `(k+1) N` design with labels. Index `i + m N` is the
/// `m`-th copy of training index `i`; block 0 is the training sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub xs: Vec<f64>,
    pub ys: Vec<bool>,
    pub n: usize,
}

impl Sample {
    pub fn blocks(&self) -> usize {
        self.xs.len() / self.n
    }

    /// Swap blocks `a` and `b` index by index.
    pub fn swap_blocks(&mut self, a: usize, b: usize) {
        let n = self.n;
        for i in 0..n {
            self.xs.swap(a * n + i, b * n + i);
            self.ys.swap(a * n + i, b * n + i);
        }
    }
}

impl DataModel {
    pub fn new(inputs: InputLaw, target: Target, noise: f64) -> Self {
        DataModel {
            inputs,
            target,
            noise,
        }
    }

    /// Uniform inputs labelled by the threshold `t`.
    pub fn uniform_threshold(t: f64, noise: f64) -> Self {
        Self::new(InputLaw::Uniform, Target::Threshold { t }, noise)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..0.5).contains(&self.noise) {
            return Err(BoundError::invalid(
                "noise",
                format!("must lie in [0, 0.5), got {}", self.noise),
            ));
        }
        if let InputLaw::IndexDependent(s) = &self.inputs {
            if s.is_empty() || s.iter().any(|&(a, b)| !(0.0 <= a && a < b && b <= 1.0)) {
                return Err(BoundError::invalid(
                    "inputs",
                    "supports must be nonempty subintervals of [0, 1]",
                ));
            }
        }
        Ok(())
    }

    /// Draw `(k+1) n` labelled points.
    pub fn sample<R: Rng>(&self, n: usize, k: usize, rng: &mut R) -> Sample {
        let total = (k + 1) * n;
        let mut xs = Vec::with_capacity(total);
        let mut ys = Vec::with_capacity(total);
        for l in 0..total {
            let (a, b) = self.inputs.support(l % n);
            let x = a + (b - a) * rng.gen::<f64>();
            let flip = rng.gen::<f64>() < self.noise;
            xs.push(x);
            ys.push(self.target.label(x) != flip);
        }
        Sample { xs, ys, n }
    }

    /// Risk of the threshold classifier `x -> [x >= t]`, averaged over the
    /// `n` training-index laws. Available only for threshold targets.
    pub fn threshold_risk(&self, t: f64, n: usize) -> Option<f64> {
        let Target::Threshold { t: star } = self.target else {
            return None;
        };
        let (lo, hi) = (t.min(star), t.max(star));
        let disagree = |(a, b): (f64, f64)| ((hi.min(b) - lo.max(a)).max(0.0)) / (b - a);
        let mass = match &self.inputs {
            InputLaw::Uniform => disagree((0.0, 1.0)),
            InputLaw::IndexDependent(_) => {
                (0..n)
                    .map(|i| disagree(self.inputs.support(i)))
                    .sum::<f64>()
                    / n as f64
            }
        };
        Some(self.noise + (1.0 - 2.0 * self.noise) * mass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    // midpoint-rule integral of P(label != prediction) over the index laws
    fn numeric_risk(model: &DataModel, t: f64, n: usize) -> f64 {
        let steps = 200_000;
        let mut total = 0.0;
        for i in 0..n {
            let (a, b) = model.inputs.support(i);
            let h = (b - a) / steps as f64;
            let mut acc = 0.0;
            for s in 0..steps {
                let x = a + (s as f64 + 0.5) * h;
                let wrong = (x >= t) != model.target.label(x);
                acc += if wrong {
                    1.0 - model.noise
                } else {
                    model.noise
                };
            }
            total += acc / steps as f64;
        }
        total / n as f64
    }

    #[test]
    fn closed_form_risk_matches_integration() {
        let models = [
            DataModel::uniform_threshold(0.4, 0.0),
            DataModel::uniform_threshold(0.4, 0.15),
            DataModel::new(InputLaw::staggered(), Target::Threshold { t: 0.55 }, 0.1),
        ];
        for model in &models {
            for &t in &[0.0, 0.1, 0.37, 0.4, 0.55, 0.8, 1.0] {
                let exact = model.threshold_risk(t, 6).unwrap();
                assert!((exact - numeric_risk(model, t, 6)).abs() < 1e-4, "t = {t}");
            }
        }
    }

    #[test]
    fn uniform_risk_is_linear_in_distance() {
        let m = DataModel::uniform_threshold(0.3, 0.1);
        let r = m.threshold_risk(0.7, 10).unwrap();
        assert!((r - (0.1 + 0.8 * 0.4)).abs() < 1e-15);
    }

    #[test]
    fn interval_target_has_no_closed_form() {
        let m = DataModel::new(InputLaw::Uniform, Target::Interval { a: 0.2, b: 0.6 }, 0.0);
        assert!(m.threshold_risk(0.5, 10).is_none());
    }

    #[test]
    fn shadow_copies_share_their_support() {
        let model = DataModel::new(InputLaw::staggered(), Target::Threshold { t: 0.5 }, 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = model.sample(5, 3, &mut rng);
        assert_eq!(s.xs.len(), 20);
        for (l, &x) in s.xs.iter().enumerate() {
            let (a, b) = model.inputs.support(l % 5);
            assert!(a <= x && x <= b);
        }
    }

    #[test]
    fn validation() {
        assert!(DataModel::uniform_threshold(0.5, 0.5).validate().is_err());
        let bad = DataModel::new(
            InputLaw::IndexDependent(vec![(0.5, 0.2)]),
            Target::Threshold { t: 0.5 },
            0.0,
        );
        assert!(bad.validate().is_err());
    }
}

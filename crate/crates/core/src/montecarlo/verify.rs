//! Coverage simulation: how often does some member of the effective class
//! beat its bound?

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::class::{pattern_errors, within_sauer, HypothesisClass, PatternErrors};
use super::data::{DataModel, InputLaw};
use super::stats::{clopper_pearson_lower, clopper_pearson_upper};
use crate::bounds::{BoundInput, BoundKind};
use crate::complexity::{check_epsilon, ComplexitySpec};
use crate::error::{BoundError, Result};

/// Level of the reported one-sided confidence limits.
pub const CONFIDENCE_LEVEL: f64 = 0.99;

/// Slack below which an excess over the bound is treated as rounding.
const VIOLATION_SLACK: f64 = 1e-12;

/// Independent generator for trial `trial` under `seed`: the stream depends
/// only on the pair, never on scheduling.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Per-pattern errors of one simulated design.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub n: usize,
    pub k: usize,
    pub patterns: Vec<PatternErrors>,
    /// `ln |effective class|` on the realised design.
    pub log_class_size: f64,
    /// `log_class_size + ln(1/epsilon)`.
    pub d: f64,
}

impl TrialOutcome {
    pub fn r1(&self, p: &PatternErrors) -> f64 {
        p.train as f64 / self.n as f64
    }

    pub fn r2(&self, p: &PatternErrors) -> f64 {
        p.shadow as f64 / (self.k * self.n) as f64
    }

    /// Worst shadow error count for each training error count.
    fn worst_shadow_by_train(&self) -> BTreeMap<u32, u32> {
        let mut worst = BTreeMap::new();
        for p in &self.patterns {
            let e = worst.entry(p.train).or_insert(0);
            *e = (*e).max(p.shadow);
        }
        worst
    }
}

/// Draw the `(k+1) n` design of trial `trial` and score every pattern.
pub fn run_trial(
    model: &DataModel,
    class: &HypothesisClass,
    n: usize,
    k: usize,
    epsilon: f64,
    seed: u64,
    trial: u64,
) -> Result<TrialOutcome> {
    let sample = model.sample(n, k, &mut trial_rng(seed, trial));
    let patterns = pattern_errors(class, &sample.xs, &sample.ys, n)?;
    let log_class_size = (patterns.len() as f64).ln();
    Ok(TrialOutcome {
        n,
        k,
        patterns,
        log_class_size,
        d: log_class_size + (1.0 / epsilon).ln(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub n: usize,
    pub k: usize,
    pub epsilon: f64,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub class: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub k: usize,
    pub epsilon: f64,
    pub noise: f64,
    pub seed: u64,
    pub trials: u64,
    /// Trials in which at least one member exceeded its bound.
    pub violations: u64,
    pub violation_rate: f64,
    pub confidence_level: f64,
    pub lower_confidence_limit: f64,
    pub upper_confidence_limit: f64,
    /// Failure probability the theorem allows: `epsilon` or `2 epsilon`.
    pub target: f64,
    /// `1 - target`, the probability with which the bound should hold.
    pub confidence: f64,
    /// The observed rate is within the target and the exact interval does
    /// not exclude it.
    pub pass: bool,
    /// The upper confidence limit itself is within the target.
    pub certified: bool,
}

/// Estimate `P(some member exceeds its bound)` over `cfg.trials` designs.
///
/// Transductive bounds are checked against the shadow error of every
/// pattern, with `d` computed from the exact effective class of each
/// design. Inductive bounds are checked against the closed-form risk, which
/// restricts them to threshold classes and threshold targets.
pub fn verify(
    kind: &BoundKind,
    model: &DataModel,
    class: &HypothesisClass,
    cfg: &VerifyConfig,
) -> Result<VerificationReport> {
    model.validate()?;
    class.validate()?;
    check_epsilon(cfg.epsilon)?;
    if cfg.n == 0 || cfg.k == 0 || cfg.trials == 0 {
        return Err(BoundError::invalid("N, k, trials", "must all be >= 1"));
    }
    let theorem = kind.theorem();
    if theorem.needs_full_exchangeability() && model.inputs != InputLaw::Uniform {
        return Err(BoundError::Unsupported(format!(
            "{theorem} needs identically distributed inputs"
        )));
    }
    let trial_fn: Box<dyn Fn(u64) -> Result<bool> + Sync> = if theorem.is_transductive() {
        if let HypothesisClass::ExplicitFinite { labelings } = class {
            if labelings[0].len() != (cfg.k + 1) * cfg.n {
                return Err(BoundError::Unsupported(
                    "explicit class must be defined on the (k+1)N design".into(),
                ));
            }
        }
        let vc = class.vc_dim();
        if theorem == crate::bounds::Theorem::RelativeChained && vc.is_none() {
            return Err(BoundError::RequiresVcDim {
                theorem: theorem.tag(),
            });
        }
        Box::new(move |t| transductive_trial(kind, model, class, cfg, t))
    } else {
        let HypothesisClass::Thresholds1D { thresholds } = class else {
            return Err(BoundError::Unsupported(format!(
                "{theorem} needs a closed-form risk, available for the threshold class only"
            )));
        };
        if model.threshold_risk(0.5, cfg.n).is_none() {
            return Err(BoundError::Unsupported(format!(
                "{theorem} needs a closed-form risk, available for threshold targets only"
            )));
        }
        let risks: Vec<f64> = thresholds
            .iter()
            .map(|&t| model.threshold_risk(t, cfg.n).expect("threshold target"))
            .collect();
        let design = kind.design_size(cfg.n as u64, cfg.k as u64);
        let complexity = ComplexitySpec::LogClassSize(class.max_log_patterns(design));
        Box::new(move |t| inductive_trial(kind, model, thresholds, &risks, complexity, cfg, t))
    };

    let flags: Vec<bool> = (0..cfg.trials)
        .into_par_iter()
        .map(&*trial_fn)
        .collect::<Result<_>>()?;
    let violations = flags.iter().filter(|&&v| v).count() as u64;

    let rate = violations as f64 / cfg.trials as f64;
    let target = theorem.failure_multiplier() * cfg.epsilon;
    let ucl = clopper_pearson_upper(violations, cfg.trials, CONFIDENCE_LEVEL);
    let lcl = clopper_pearson_lower(violations, cfg.trials, CONFIDENCE_LEVEL);
    let certified = ucl <= target;
    Ok(VerificationReport {
        theorem: theorem.tag().to_owned(),
        class: class.name().to_owned(),
        n: cfg.n,
        k: cfg.k,
        epsilon: cfg.epsilon,
        noise: model.noise,
        seed: cfg.seed,
        trials: cfg.trials,
        violations,
        violation_rate: rate,
        confidence_level: CONFIDENCE_LEVEL,
        lower_confidence_limit: lcl,
        upper_confidence_limit: ucl,
        target,
        confidence: 1.0 - target,
        pass: certified || (rate <= target && lcl <= target && target <= ucl),
        certified,
    })
}

/// Bound for training error rate `r1`, or `None` when the theorem certifies
/// nothing (no valid chaining level).
fn bound_at(kind: &BoundKind, input: &BoundInput) -> Result<Option<f64>> {
    match kind.evaluate(input) {
        Ok(res) if res.valid => Ok(Some(res.value)),
        Ok(_) | Err(BoundError::NoCertifiedLevel { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn transductive_trial(
    kind: &BoundKind,
    model: &DataModel,
    class: &HypothesisClass,
    cfg: &VerifyConfig,
    trial: u64,
) -> Result<bool> {
    let out = run_trial(model, class, cfg.n, cfg.k, cfg.epsilon, cfg.seed, trial)?;
    let m = ((cfg.k + 1) * cfg.n) as u64;
    debug_assert!(within_sauer(class, out.log_class_size, m));
    let complexity = match class.vc_dim() {
        Some(h) if kind.theorem() == crate::bounds::Theorem::RelativeChained => {
            ComplexitySpec::VcDim(h)
        }
        _ => ComplexitySpec::LogClassSize(out.log_class_size),
    };
    let (n, k) = (cfg.n as u64, cfg.k as u64);
    for (train, shadow) in out.worst_shadow_by_train() {
        let input = BoundInput::new(n, k, cfg.epsilon, train as f64 / cfg.n as f64, complexity);
        if let Some(bound) = bound_at(kind, &input)? {
            let r2 = shadow as f64 / (cfg.k * cfg.n) as f64;
            if r2 > bound + VIOLATION_SLACK {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn inductive_trial(
    kind: &BoundKind,
    model: &DataModel,
    thresholds: &[f64],
    risks: &[f64],
    complexity: ComplexitySpec,
    cfg: &VerifyConfig,
    trial: u64,
) -> Result<bool> {
    // only the training block is observed
    let sample = model.sample(cfg.n, 0, &mut trial_rng(cfg.seed, trial));
    let mut worst: BTreeMap<u32, f64> = BTreeMap::new();
    for (&t, &risk) in thresholds.iter().zip(risks) {
        let errors = sample
            .xs
            .iter()
            .zip(&sample.ys)
            .filter(|&(&x, &y)| (x >= t) != y)
            .count() as u32;
        let e = worst.entry(errors).or_insert(0.0);
        *e = e.max(risk);
    }
    let (n, k) = (cfg.n as u64, cfg.k as u64);
    for (errors, risk) in worst {
        let input = BoundInput::new(n, k, cfg.epsilon, errors as f64 / cfg.n as f64, complexity);
        if let Some(bound) = bound_at(kind, &input)? {
            if risk > bound + VIOLATION_SLACK {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

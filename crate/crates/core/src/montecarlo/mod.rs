//! Monte-Carlo coverage checks on small enumerable hypothesis classes.
//!
//! A trial draws a `(k+1) N` design from a partially exchangeable
//! [`DataModel`], enumerates the effective class on it and records whether
//! any member's shadow error (or true risk) exceeds its bound. [`verify`]
//! repeats this and reports an exact binomial confidence limit on the
//! violation probability.

mod class;
mod data;
mod stats;
mod verify;

pub use class::{
    effective_class, pattern_errors, within_sauer, HypothesisClass, Member, PatternErrors,
};
pub use data::{DataModel, InputLaw, Sample, Target};
pub use stats::{clopper_pearson_lower, clopper_pearson_upper, ks_two_sample, KsTest};
pub use verify::{
    run_trial, trial_rng, verify, TrialOutcome, VerificationReport, VerifyConfig, CONFIDENCE_LEVEL,
};

//! Closed-form evaluation of the transductive and inductive risk bounds.
//!
//! Every bound is a pure function of a [`BoundInput`]. The transductive bounds
//! control the error rate `r2` on a shadow sample of `k N` points from the
//! error rate `r1` on the `N` training points; the inductive bounds control
//! the expected risk `R`. Each closed form is the largest root of an implicit
//! inequality `x - r1 <= rhs(x)`; the test suite checks every one of them
//! against a bisection of that inequality.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complexity::{chain_levels_with, check_epsilon, d_term, ComplexitySpec, LevelEntropy};
use crate::error::{BoundError, Result};
use crate::special::bernstein_g;

/// A bound is "significant" when it beats random guessing on binary labels.
pub const SIGNIFICANCE_THRESHOLD: f64 = 0.5;

/// The problem instance fed to every bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundInput {
    /// Training sample size.
    pub n: u64,
    /// Shadow sample multiplier: the shadow sample has `k n` points.
    pub k: u64,
    pub epsilon: f64,
    /// Empirical error rate on the training sample.
    pub r1: f64,
    pub complexity: ComplexitySpec,
}

impl BoundInput {
    pub fn new(n: u64, k: u64, epsilon: f64, r1: f64, complexity: ComplexitySpec) -> Self {
        BoundInput {
            n,
            k,
            epsilon,
            r1,
            complexity,
        }
    }

    /// Convenience constructor for a VC class of dimension `h`.
    pub fn vc(n: u64, h: u32, epsilon: f64, r1: f64, k: u64) -> Self {
        Self::new(n, k, epsilon, r1, ComplexitySpec::VcDim(h))
    }

    pub fn with_k(self, k: u64) -> Self {
        BoundInput { k, ..self }
    }

    pub fn with_r1(self, r1: f64) -> Self {
        BoundInput { r1, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(BoundError::invalid("N", "must be >= 1"));
        }
        if self.k == 0 {
            return Err(BoundError::invalid("k", "must be >= 1"));
        }
        check_epsilon(self.epsilon)?;
        if !(0.0..=1.0).contains(&self.r1) {
            return Err(BoundError::invalid(
                "r1",
                format!("must lie in [0, 1], got {}", self.r1),
            ));
        }
        self.complexity.validate()
    }

    fn nf(&self) -> f64 {
        self.n as f64
    }

    fn kf(&self) -> f64 {
        self.k as f64
    }

    /// `d` over a shadow-augmented design of `(k+1) N` points.
    fn d_shadow(&self) -> Result<f64> {
        d_term(self.complexity, (self.k + 1) * self.n, self.epsilon)
    }

    /// Empirical errors are multiples of `1/N`.
    fn r1_off_grid(&self) -> bool {
        let scaled = self.r1 * self.nf();
        (scaled - scaled.round()).abs() > 1e-9
    }
}

/// Identifies which theorem produced a [`BoundResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// Vapnik's classical bound with a shadow sample of size `N`.
    Vapnik,
    /// Earlier PAC-Bayes bound with the auxiliary parameter `zeta`.
    PreviousPac,
    TransductiveBasic,
    TransductiveImprovedK1,
    TransductiveImproved,
    InductiveIntegrated,
    InductiveIntegratedTight,
    InductiveBasicVariance,
    InductiveExchangeableK1,
    InductiveNearOptimalLambda,
    InductiveExchangeableLambda,
    RelativeChained,
}

impl Theorem {
    pub const ALL: [Theorem; 12] = [
        Theorem::Vapnik,
        Theorem::PreviousPac,
        Theorem::TransductiveBasic,
        Theorem::TransductiveImprovedK1,
        Theorem::TransductiveImproved,
        Theorem::InductiveIntegrated,
        Theorem::InductiveIntegratedTight,
        Theorem::InductiveBasicVariance,
        Theorem::InductiveExchangeableK1,
        Theorem::InductiveNearOptimalLambda,
        Theorem::InductiveExchangeableLambda,
        Theorem::RelativeChained,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Theorem::Vapnik => "vapnik",
            Theorem::PreviousPac => "previous-pac",
            Theorem::TransductiveBasic => "transductive-basic",
            Theorem::TransductiveImprovedK1 => "transductive-improved-k1",
            Theorem::TransductiveImproved => "transductive-improved",
            Theorem::InductiveIntegrated => "inductive-integrated",
            Theorem::InductiveIntegratedTight => "inductive-integrated-tight",
            Theorem::InductiveBasicVariance => "inductive-basic-variance",
            Theorem::InductiveExchangeableK1 => "inductive-exchangeable-k1",
            Theorem::InductiveNearOptimalLambda => "inductive-near-optimal-lambda",
            Theorem::InductiveExchangeableLambda => "inductive-exchangeable-lambda",
            Theorem::RelativeChained => "relative-chained",
        }
    }

    /// Transductive bounds control the shadow-sample error `r2`; the others
    /// control the expected risk.
    pub fn is_transductive(self) -> bool {
        matches!(
            self,
            Theorem::TransductiveBasic
                | Theorem::TransductiveImprovedK1
                | Theorem::TransductiveImproved
                | Theorem::RelativeChained
        )
    }

    /// Theorems whose guarantee needs full exchangeability (`k = 1`), not
    /// just partial exchangeability.
    pub fn needs_full_exchangeability(self) -> bool {
        matches!(
            self,
            Theorem::TransductiveImprovedK1
                | Theorem::InductiveExchangeableK1
                | Theorem::InductiveExchangeableLambda
        )
    }

    /// Number of `epsilon`s spent by the guarantee: the result holds with
    /// probability at least `1 - failure_multiplier * epsilon`.
    pub fn failure_multiplier(self) -> f64 {
        match self {
            Theorem::RelativeChained => 2.0,
            _ => 1.0,
        }
    }

    pub fn takes_alpha(self) -> bool {
        matches!(
            self,
            Theorem::InductiveIntegrated
                | Theorem::InductiveIntegratedTight
                | Theorem::InductiveBasicVariance
                | Theorem::InductiveExchangeableK1
        )
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Theorem {
    type Err = BoundError;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.tag() == s)
            .ok_or_else(|| BoundError::invalid("theorem", format!("unknown theorem tag `{s}`")))
    }
}

/// Choice of the trade-off parameter `alpha` in the integrated inductive bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Alpha {
    /// `alpha = sqrt(pi / d) / 2`, the near-optimal choice.
    Auto,
    /// `alpha = d^(-1/2)`.
    InvSqrtD,
    Value(f64),
}

impl Alpha {
    pub fn resolve(self, d: f64) -> Result<f64> {
        let alpha = match self {
            Alpha::Auto => 0.5 * (PI / d).sqrt(),
            Alpha::InvSqrtD => 1.0 / d.sqrt(),
            Alpha::Value(a) => a,
        };
        if alpha > 0.0 && alpha.is_finite() {
            Ok(alpha)
        } else {
            Err(BoundError::invalid(
                "alpha",
                format!("must be positive and finite, got {alpha}"),
            ))
        }
    }
}

/// `dbar` for the bounds that pick a near-optimal `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DBar {
    /// Replace the distribution-dependent exponents by their essential
    /// supremum `d_star`.
    DStar,
    /// Caller-supplied unconditional expectation `dbar`; the conditional `d`
    /// comes from the input complexity.
    Value(f64),
}

/// Chaining level for [`relative_chained`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    /// Take the best available level.
    Auto,
    Fixed(u32),
}

/// Outcome of one bound evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub theorem: Theorem,
    /// Bound on `r2` (transductive) or `R` (inductive), unclamped.
    pub value: f64,
    /// `value < 1/2`.
    pub significant: bool,
    /// Every precondition of the theorem holds (for instance `r1 < 1/2`
    /// and `value <= 1/2` for the variance-improved bounds).
    pub valid: bool,
    /// Probability with which the guarantee holds.
    pub confidence: f64,
    /// `N r1` is not an integer, so `r1` cannot be an empirical error rate.
    pub r1_off_grid: bool,
    /// Intermediate quantities.
    pub terms: BTreeMap<String, f64>,
}

impl BoundResult {
    fn new(theorem: Theorem, input: &BoundInput, value: f64, valid: bool) -> Self {
        BoundResult {
            theorem,
            value,
            significant: value < SIGNIFICANCE_THRESHOLD,
            valid,
            confidence: 1.0 - theorem.failure_multiplier() * input.epsilon,
            r1_off_grid: input.r1_off_grid(),
            terms: BTreeMap::new(),
        }
    }

    fn term(mut self, name: &str, value: f64) -> Self {
        self.terms.insert(name.to_owned(), value);
        self
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.terms.get(name).copied()
    }
}

/// Largest `x` with `x - r1 <= sqrt(c1 + c2 x)`.
pub fn solve_sqrt_inequality(r1: f64, c1: f64, c2: f64) -> f64 {
    debug_assert!(c1 >= 0.0 && c2 >= 0.0);
    r1 + c2 / 2.0 + (c1 + c2 * r1 + c2 * c2 / 4.0).sqrt()
}

/// Largest root of `(x - r1)^2 = (2 dp / N) x (1 - x)`, the shape shared by
/// the inductive bounds with a Bernoulli variance term.
fn variance_bound(r1: f64, n: f64, dp: f64) -> f64 {
    let t = dp / n;
    (r1 + t + (2.0 * t * r1 * (1.0 - r1) + t * t).sqrt()) / (1.0 + 2.0 * t)
}

/// Largest root of `(x - r1)^2 = (2 d / N)(r1 + x - 2 r1 x)`, the fully
/// exchangeable variance shape.
fn exchangeable_bound(r1: f64, n: f64, d: f64) -> f64 {
    let t = d / n;
    let s = 1.0 - 2.0 * r1;
    r1 + t * s + (4.0 * t * (1.0 - r1) * r1 + t * t * s * s).sqrt()
}

fn variance_valid(r1: f64, value: f64) -> bool {
    r1 < 0.5 && value <= 0.5
}

fn require_k1(theorem: Theorem, input: &BoundInput) -> Result<()> {
    if input.k != 1 {
        return Err(BoundError::RequiresK1 {
            theorem: theorem.tag(),
            k: input.k,
        });
    }
    Ok(())
}

fn positive_d(d: f64) -> Result<f64> {
    if d > 0.0 {
        Ok(d)
    } else {
        Err(BoundError::invalid(
            "d",
            format!("must be > 0 for this bound, got {d}"),
        ))
    }
}

/// Vapnik's bound with `d' = log-growth over 2N + ln(4 / epsilon)`; `k` is
/// ignored.
pub fn vapnik_bound(input: &BoundInput) -> Result<BoundResult> {
    input.validate()?;
    let n = input.nf();
    let growth = input.complexity.log_growth(2 * input.n, input.epsilon);
    let dp = growth + (4.0 / input.epsilon).ln();
    let value = if dp > 0.0 {
        input.r1 + (2.0 * dp / n) * (1.0 + (1.0 + n * input.r1 / dp).sqrt())
    } else {
        input.r1
    };
    Ok(BoundResult::new(Theorem::Vapnik, input, value, true).term("d_prime", dp))
}

/// Earlier PAC-Bayes bound, parameterised by `zeta > 1`.
pub fn previous_pac_bound(input: &BoundInput, zeta: f64) -> Result<BoundResult> {
    input.validate()?;
    if !(zeta > 1.0 && zeta.is_finite()) {
        return Err(BoundError::invalid(
            "zeta",
            format!("must be > 1, got {zeta}"),
        ));
    }
    let n = input.nf();
    let growth = input.complexity.log_growth(2 * input.n, input.epsilon);
    let d = growth + ((2.0 * zeta * n).ln() / (input.epsilon * zeta.ln())).ln();
    let d = positive_d(d)?;
    let value = input.r1 + (zeta * d / n) * (1.0 + (1.0 + 4.0 * n * input.r1 / (zeta * d)).sqrt());
    Ok(BoundResult::new(Theorem::PreviousPac, input, value, true)
        .term("d", d)
        .term("zeta", zeta))
}

/// Transductive bound with the plain variance term, for any shadow size.
pub fn transductive_basic(input: &BoundInput) -> Result<BoundResult> {
    input.validate()?;
    let (n, k) = (input.nf(), input.kf());
    let d = input.d_shadow()?;
    let r1 = input.r1;
    let value = r1 + d / n + (2.0 * d * (1.0 + 1.0 / k) * r1 / n + d * d / (n * n)).sqrt();
    Ok(
        BoundResult::new(Theorem::TransductiveBasic, input, value, true)
            .term("d", d)
            .term("k", k),
    )
}

/// Transductive bound with the improved variance term, fully exchangeable
/// case `k = 1`.
pub fn transductive_improved_k1(input: &BoundInput) -> Result<BoundResult> {
    input.validate()?;
    require_k1(Theorem::TransductiveImprovedK1, input)?;
    let d = d_term(input.complexity, 2 * input.n, input.epsilon)?;
    let value = exchangeable_bound(input.r1, input.nf(), d);
    Ok(
        BoundResult::new(Theorem::TransductiveImprovedK1, input, value, true)
            .term("d", d)
            .term("k", 1.0),
    )
}

/// Transductive bound with the improved variance term for an arbitrary
/// shadow multiplier, under partial exchangeability.
pub fn transductive_improved(input: &BoundInput) -> Result<BoundResult> {
    input.validate()?;
    let (n, k) = (input.nf(), input.kf());
    let d = input.d_shadow()?;
    let r1 = input.r1;
    let t = d / n;
    let q = 1.0 + 1.0 / k;
    let value =
        (r1 + t * (1.0 + (1.0 - 2.0 * r1) / k) + q * (2.0 * t * r1 * (1.0 - r1) + t * t).sqrt())
            / (1.0 + 2.0 * t);
    let valid = variance_valid(r1, value);
    Ok(
        BoundResult::new(Theorem::TransductiveImproved, input, value, valid)
            .term("d", d)
            .term("k", k),
    )
}

/// Inductive bound obtained by integrating over an exponential prior on
/// `lambda`, with `d' = d (1+1/k)^2 (1 - ln(alpha)/(2d) + alpha/sqrt(pi d))^2`.
pub fn inductive_integrated(input: &BoundInput, alpha: Alpha) -> Result<BoundResult> {
    input.validate()?;
    let (n, k) = (input.nf(), input.kf());
    let d = positive_d(input.d_shadow()?)?;
    let a = alpha.resolve(d)?;
    let q = 1.0 + 1.0 / k;
    let inflation = 1.0 - a.ln() / (2.0 * d) + a / (PI * d).sqrt();
    let dp = d * q * q * inflation * inflation;
    let value = variance_bound(input.r1, n, dp);
    Ok(BoundResult::new(
        Theorem::InductiveIntegrated,
        input,
        value,
        variance_valid(input.r1, value),
    )
    .term("d", d)
    .term("alpha", a)
    .term("d_prime", dp)
    .term("k", k))
}

/// `c = 2 alpha sqrt((d - ln alpha) / pi) + alpha^2 / pi`, with `d - ln alpha`.
fn integrated_c(d: f64, alpha: f64) -> Result<(f64, f64)> {
    let shifted = d - alpha.ln();
    if shifted <= 0.0 {
        return Err(BoundError::invalid(
            "alpha",
            format!("d - ln(alpha) must be positive, got {shifted}"),
        ));
    }
    Ok((
        shifted,
        2.0 * alpha * (shifted / PI).sqrt() + alpha * alpha / PI,
    ))
}

/// Tightened form of [`inductive_integrated`] that keeps the exact variance
/// at the mixed error rate.
pub fn inductive_integrated_tight(input: &BoundInput, alpha: Alpha) -> Result<BoundResult> {
    input.validate()?;
    let (n, k) = (input.nf(), input.kf());
    let d = positive_d(input.d_shadow()?)?;
    let a = alpha.resolve(d)?;
    let (shifted, c) = integrated_c(d, a)?;
    let q = 1.0 + 1.0 / k;
    let r1 = input.r1;
    let d1 = shifted + q * q * c;
    let d2 = q * (shifted * (1.0 - 2.0 * r1 / (1.0 + k)) + q * c);
    let d3 = q * q * (shifted + c + 2.0 * c * shifted / (n * k * k));
    let d4 = q * (shifted + q * c);
    let value = (r1 + d2 / n + (2.0 * d3 * r1 * (1.0 - r1) / n + d4 * d4 / (n * n)).sqrt())
        / (1.0 + 2.0 * d1 / n);
    Ok(BoundResult::new(
        Theorem::InductiveIntegratedTight,
        input,
        value,
        variance_valid(r1, value),
    )
    .term("d", d)
    .term("alpha", a)
    .term("c", c)
    .term("d1", d1)
    .term("d2", d2)
    .term("d3", d3)
    .term("d4", d4)
    .term("k", k))
}

/// Inductive bound that keeps the plain (non-Bernoulli) variance term.
pub fn inductive_basic_variance(input: &BoundInput, alpha: Alpha) -> Result<BoundResult> {
    input.validate()?;
    let (n, k) = (input.nf(), input.kf());
    let d = positive_d(input.d_shadow()?)?;
    let a = alpha.resolve(d)?;
    let inflation = 1.0 - a.ln() / (2.0 * d) + a / (PI * d).sqrt();
    let dp = (1.0 + 1.0 / k) * inflation * inflation * d;
    let r1 = input.r1;
    let value = r1 + dp / n + (2.0 * dp * r1 / n + dp * dp / (n * n)).sqrt();
    Ok(
        BoundResult::new(Theorem::InductiveBasicVariance, input, value, true)
            .term("d", d)
            .term("alpha", a)
            .term("d_prime", dp)
            .term("k", k),
    )
}

/// Inductive bound in the fully exchangeable case `k = 1`. The weakened form
/// folds `c` into `d'' = d' + 2c` and drops the normalising factor.
pub fn inductive_exchangeable_k1(
    input: &BoundInput,
    alpha: Alpha,
    weakened: bool,
) -> Result<BoundResult> {
    input.validate()?;
    require_k1(Theorem::InductiveExchangeableK1, input)?;
    let n = input.nf();
    let d = positive_d(d_term(input.complexity, 2 * input.n, input.epsilon)?)?;
    let a = alpha.resolve(d)?;
    let (dp, c) = integrated_c(d, a)?;
    let r1 = input.r1;
    let s = 1.0 - 2.0 * r1;
    let (value, dpp) = if weakened {
        let dpp = dp + 2.0 * c;
        (exchangeable_bound(r1, n, dpp), Some(dpp))
    } else {
        let radicand = 4.0 * (dp + c) * r1 * (1.0 - r1) / n
            + dp * dp * s * s / (n * n)
            + 4.0 * c * (dp + c) / (n * n);
        let v = (r1 + s * dp / n + 2.0 * c / n + radicand.sqrt()) / (1.0 + 4.0 * c / n);
        (v, None)
    };
    let mut res = BoundResult::new(
        Theorem::InductiveExchangeableK1,
        input,
        value,
        variance_valid(r1, value),
    )
    .term("d", d)
    .term("alpha", a)
    .term("d_prime", dp)
    .term("c", c)
    .term("k", 1.0)
    .term("weakened", if weakened { 1.0 } else { 0.0 });
    if let Some(dpp) = dpp {
        res = res.term("d_second", dpp);
    }
    Ok(res)
}

/// Inductive bound with a near-optimal data-independent `lambda`.
///
/// With [`DBar::DStar`], `d' = d_star (1+1/k)^2` where `d_star` is the
/// complexity exponent over the `(k+1) N` design.
pub fn inductive_near_optimal_lambda(input: &BoundInput, dbar: DBar) -> Result<BoundResult> {
    input.validate()?;
    let (n, k) = (input.nf(), input.kf());
    let q = 1.0 + 1.0 / k;
    let d = input.d_shadow()?;
    let mut res_terms = vec![("k", k)];
    let dp = match dbar {
        DBar::DStar => {
            res_terms.push(("d_star", d));
            d * q * q
        }
        DBar::Value(db) => {
            if !(db > 0.0 && db.is_finite()) {
                return Err(BoundError::invalid(
                    "dbar",
                    format!("must be > 0, got {db}"),
                ));
            }
            res_terms.push(("dbar", db));
            res_terms.push(("d", d));
            0.25 * q * q * (db + d) * (1.0 + d / db)
        }
    };
    let value = variance_bound(input.r1, n, dp);
    let mut res = BoundResult::new(
        Theorem::InductiveNearOptimalLambda,
        input,
        value,
        variance_valid(input.r1, value),
    )
    .term("d_prime", dp);
    for (name, v) in res_terms {
        res = res.term(name, v);
    }
    Ok(res)
}

/// Fully exchangeable counterpart of [`inductive_near_optimal_lambda`]; `k`
/// is fixed to 1 and the input's `k` is ignored.
///
/// With [`DBar::DStar`], `d' = 2 d_star` where `d_star` is the complexity
/// exponent over the `N` training points. The explicit variant measures `d`
/// over `2N`.
pub fn inductive_exchangeable_lambda(input: &BoundInput, dbar: DBar) -> Result<BoundResult> {
    input.validate()?;
    let n = input.nf();
    let (dp, extra) = match dbar {
        DBar::DStar => {
            let ds = d_term(input.complexity, input.n, input.epsilon)?;
            (2.0 * ds, vec![("d_star", ds)])
        }
        DBar::Value(db) => {
            if !(db > 0.0 && db.is_finite()) {
                return Err(BoundError::invalid(
                    "dbar",
                    format!("must be > 0, got {db}"),
                ));
            }
            let d = d_term(input.complexity, 2 * input.n, input.epsilon)?;
            let ratio = 1.0 + d / db;
            (0.5 * db * ratio * ratio, vec![("dbar", db), ("d", d)])
        }
    };
    let value = variance_bound(input.r1, n, dp);
    let mut res = BoundResult::new(
        Theorem::InductiveExchangeableLambda,
        input,
        value,
        variance_valid(input.r1, value),
    )
    .term("d_prime", dp)
    .term("k", 1.0);
    for (name, v) in extra {
        res = res.term(name, v);
    }
    Ok(res)
}

/// Per-level coefficients of the chained relative bound
/// `r2 - r1 <= a + b sqrt(phi((r1 + k r2)/(1+k) + xi))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainCoefficients {
    pub j: u32,
    pub xi: f64,
    pub a: f64,
    pub b: f64,
    pub d_j: f64,
    pub d_j_prime: f64,
}

/// Chaining coefficients for every available level.
pub fn chain_coefficients(
    input: &BoundInput,
    entropy: LevelEntropy,
) -> Result<Vec<ChainCoefficients>> {
    input.validate()?;
    let h = input.complexity.vc_dim().ok_or(BoundError::RequiresVcDim {
        theorem: Theorem::RelativeChained.tag(),
    })?;
    let (n, k) = (input.nf(), input.kf());
    let q2 = (1.0 + 1.0 / k).powi(2);
    let levels = chain_levels_with(input.n, input.k, h, input.epsilon, entropy)?;
    Ok(levels
        .into_iter()
        .map(|l| {
            let g = bernstein_g((8.0 * l.d_j / (l.xi_j * n)).sqrt());
            ChainCoefficients {
                j: l.j,
                xi: l.xi_j,
                a: (g + 0.5) * (2.0 * q2 * l.xi_j * l.d_j / n).sqrt(),
                b: (2.0 * q2 * l.d_j_prime / n).sqrt(),
                d_j: l.d_j,
                d_j_prime: l.d_j_prime,
            }
        })
        .collect())
}

/// Largest `r2` with `r2 - r1 <= a + b sqrt(p (1 - p))`,
/// `p = (r1 + k r2)/(1+k) + xi`, or `None` when the quadratic has no real root.
/// Every `r2 <= r1 + a` satisfies the unsquared inequality, so a root of the
/// squared form below `r1 + a` is spurious and `r1 + a` is returned instead.
pub fn solve_chained(r1: f64, k: f64, a: f64, b: f64, xi: f64) -> Option<f64> {
    let kp = 1.0 + k;
    let big_a = 1.0 + (k * b / kp).powi(2);
    let big_b = r1 + a + (k * b * b / (2.0 * kp * kp)) * (kp * (1.0 - 2.0 * xi) - 2.0 * r1);
    let big_c = (r1 + a).powi(2) - (b * b / (kp * kp)) * (kp * xi + r1) * (kp * (1.0 - xi) - r1);
    let disc = big_b * big_b - big_a * big_c;
    (disc >= 0.0).then(|| ((big_b + disc.sqrt()) / big_a).max(r1 + a))
}

/// Chained relative bound with the default level-count entropy term.
/// Holds with probability `1 - 2 epsilon`.
pub fn relative_chained(input: &BoundInput, level: Level) -> Result<BoundResult> {
    relative_chained_with(input, level, LevelEntropy::default())
}

pub fn relative_chained_with(
    input: &BoundInput,
    level: Level,
    entropy: LevelEntropy,
) -> Result<BoundResult> {
    let coeffs = chain_coefficients(input, entropy)?;
    let candidates: Vec<&ChainCoefficients> = match level {
        Level::Auto => coeffs.iter().collect(),
        Level::Fixed(j) => coeffs.iter().filter(|c| c.j == j).collect(),
    };
    let tried: Vec<u32> = match level {
        Level::Auto => coeffs.iter().map(|c| c.j).collect(),
        Level::Fixed(j) => vec![j],
    };
    let k = input.kf();
    let best = candidates
        .into_iter()
        .filter_map(|c| solve_chained(input.r1, k, c.a, c.b, c.xi).map(|v| (v, c)))
        .fold(None::<(f64, &ChainCoefficients)>, |acc, cur| match acc {
            Some(prev) if prev.0 <= cur.0 => Some(prev),
            _ => Some(cur),
        });
    let (value, c) = best.ok_or(BoundError::NoCertifiedLevel { tried })?;
    let valid = input.r1 < 0.5 && value < 0.5;
    Ok(
        BoundResult::new(Theorem::RelativeChained, input, value, valid)
            .term("k", k)
            .term("j", c.j as f64)
            .term("xi_j", c.xi)
            .term("d_j", c.d_j)
            .term("d_j_prime", c.d_j_prime)
            .term("a", c.a)
            .term("b", c.b),
    )
}

/// A theorem together with its free parameters, so that bounds can be
/// passed around, swept and optimised uniformly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "theorem", rename_all = "kebab-case")]
pub enum BoundKind {
    Vapnik,
    PreviousPac { zeta: f64 },
    TransductiveBasic,
    TransductiveImprovedK1,
    TransductiveImproved,
    InductiveIntegrated { alpha: Alpha },
    InductiveIntegratedTight { alpha: Alpha },
    InductiveBasicVariance { alpha: Alpha },
    InductiveExchangeableK1 { alpha: Alpha, weakened: bool },
    InductiveNearOptimalLambda { dbar: DBar },
    InductiveExchangeableLambda { dbar: DBar },
    RelativeChained { level: Level, entropy: LevelEntropy },
}

impl BoundKind {
    /// The theorem with its default parameters (`alpha` auto, `dbar = d_star`,
    /// best chaining level, `zeta = 2`).
    pub fn default_for(theorem: Theorem) -> Self {
        match theorem {
            Theorem::Vapnik => BoundKind::Vapnik,
            Theorem::PreviousPac => BoundKind::PreviousPac { zeta: 2.0 },
            Theorem::TransductiveBasic => BoundKind::TransductiveBasic,
            Theorem::TransductiveImprovedK1 => BoundKind::TransductiveImprovedK1,
            Theorem::TransductiveImproved => BoundKind::TransductiveImproved,
            Theorem::InductiveIntegrated => BoundKind::InductiveIntegrated { alpha: Alpha::Auto },
            Theorem::InductiveIntegratedTight => {
                BoundKind::InductiveIntegratedTight { alpha: Alpha::Auto }
            }
            Theorem::InductiveBasicVariance => {
                BoundKind::InductiveBasicVariance { alpha: Alpha::Auto }
            }
            Theorem::InductiveExchangeableK1 => BoundKind::InductiveExchangeableK1 {
                alpha: Alpha::Auto,
                weakened: false,
            },
            Theorem::InductiveNearOptimalLambda => {
                BoundKind::InductiveNearOptimalLambda { dbar: DBar::DStar }
            }
            Theorem::InductiveExchangeableLambda => {
                BoundKind::InductiveExchangeableLambda { dbar: DBar::DStar }
            }
            Theorem::RelativeChained => BoundKind::RelativeChained {
                level: Level::Auto,
                entropy: LevelEntropy::default(),
            },
        }
    }

    pub fn theorem(&self) -> Theorem {
        match self {
            BoundKind::Vapnik => Theorem::Vapnik,
            BoundKind::PreviousPac { .. } => Theorem::PreviousPac,
            BoundKind::TransductiveBasic => Theorem::TransductiveBasic,
            BoundKind::TransductiveImprovedK1 => Theorem::TransductiveImprovedK1,
            BoundKind::TransductiveImproved => Theorem::TransductiveImproved,
            BoundKind::InductiveIntegrated { .. } => Theorem::InductiveIntegrated,
            BoundKind::InductiveIntegratedTight { .. } => Theorem::InductiveIntegratedTight,
            BoundKind::InductiveBasicVariance { .. } => Theorem::InductiveBasicVariance,
            BoundKind::InductiveExchangeableK1 { .. } => Theorem::InductiveExchangeableK1,
            BoundKind::InductiveNearOptimalLambda { .. } => Theorem::InductiveNearOptimalLambda,
            BoundKind::InductiveExchangeableLambda { .. } => Theorem::InductiveExchangeableLambda,
            BoundKind::RelativeChained { .. } => Theorem::RelativeChained,
        }
    }

    pub fn evaluate(&self, input: &BoundInput) -> Result<BoundResult> {
        match *self {
            BoundKind::Vapnik => vapnik_bound(input),
            BoundKind::PreviousPac { zeta } => previous_pac_bound(input, zeta),
            BoundKind::TransductiveBasic => transductive_basic(input),
            BoundKind::TransductiveImprovedK1 => transductive_improved_k1(input),
            BoundKind::TransductiveImproved => transductive_improved(input),
            BoundKind::InductiveIntegrated { alpha } => inductive_integrated(input, alpha),
            BoundKind::InductiveIntegratedTight { alpha } => {
                inductive_integrated_tight(input, alpha)
            }
            BoundKind::InductiveBasicVariance { alpha } => inductive_basic_variance(input, alpha),
            BoundKind::InductiveExchangeableK1 { alpha, weakened } => {
                inductive_exchangeable_k1(input, alpha, weakened)
            }
            BoundKind::InductiveNearOptimalLambda { dbar } => {
                inductive_near_optimal_lambda(input, dbar)
            }
            BoundKind::InductiveExchangeableLambda { dbar } => {
                inductive_exchangeable_lambda(input, dbar)
            }
            BoundKind::RelativeChained { level, entropy } => {
                relative_chained_with(input, level, entropy)
            }
        }
    }

    /// Largest design over which the bound measures the class complexity.
    pub fn design_size(&self, n: u64, k: u64) -> u64 {
        match self {
            BoundKind::InductiveExchangeableLambda { dbar: DBar::DStar } => n,
            BoundKind::Vapnik
            | BoundKind::PreviousPac { .. }
            | BoundKind::TransductiveImprovedK1
            | BoundKind::InductiveExchangeableK1 { .. }
            | BoundKind::InductiveExchangeableLambda { .. } => 2 * n,
            _ => (k + 1) * n,
        }
    }

    /// Same bound with a different `alpha`.
    pub fn with_alpha(self, alpha: Alpha) -> Result<Self> {
        Ok(match self {
            BoundKind::InductiveIntegrated { .. } => BoundKind::InductiveIntegrated { alpha },
            BoundKind::InductiveIntegratedTight { .. } => {
                BoundKind::InductiveIntegratedTight { alpha }
            }
            BoundKind::InductiveBasicVariance { .. } => BoundKind::InductiveBasicVariance { alpha },
            BoundKind::InductiveExchangeableK1 { weakened, .. } => {
                BoundKind::InductiveExchangeableK1 { alpha, weakened }
            }
            other => return Err(BoundError::NoAlphaParameter(other.theorem().tag())),
        })
    }

    pub fn with_level(self, level: Level) -> Self {
        match self {
            BoundKind::RelativeChained { entropy, .. } => {
                BoundKind::RelativeChained { level, entropy }
            }
            other => other,
        }
    }
}

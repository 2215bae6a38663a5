//! Complexity terms: the log-cardinality and confidence exponents consumed by
//! every bound, from Sauer's growth bound through the covering-number grid
//! used by the chained relative bound.
//!
//! All logarithms are natural.

use serde::{Deserialize, Serialize};

use crate::error::{BoundError, Result};

/// How the complexity of the hypothesis class enters the exponent `d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum ComplexitySpec {
    /// `d` given directly; it already contains the `ln(1/epsilon)` term.
    ExplicitD(f64),
    /// Natural log of the size of the effective class.
    LogClassSize(f64),
    /// VC dimension, bounded through Sauer's lemma.
    VcDim(u32),
}

impl ComplexitySpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ComplexitySpec::ExplicitD(d) if !(d >= 0.0 && d.is_finite()) => Err(
                BoundError::invalid("d", format!("must be finite and >= 0, got {d}")),
            ),
            ComplexitySpec::LogClassSize(l) if !(l >= 0.0 && l.is_finite()) => {
                Err(BoundError::invalid(
                    "log-class-size",
                    format!("must be finite and >= 0, got {l}"),
                ))
            }
            ComplexitySpec::VcDim(0) => Err(BoundError::invalid("h", "VC dimension must be >= 1")),
            _ => Ok(()),
        }
    }

    pub fn vc_dim(&self) -> Option<u32> {
        match *self {
            ComplexitySpec::VcDim(h) => Some(h),
            _ => None,
        }
    }

    /// The class-size part of `d` on a design of `m` points, i.e. `d` without
    /// its confidence term.
    pub(crate) fn log_growth(&self, m: u64, epsilon: f64) -> f64 {
        match *self {
            ComplexitySpec::ExplicitD(d) => d - (1.0 / epsilon).ln(),
            ComplexitySpec::LogClassSize(l) => l,
            ComplexitySpec::VcDim(h) => sauer_log_growth(h, m),
        }
    }
}

/// Sauer bound on the log of the number of labelings a class of VC dimension
/// `h` induces on `m` points: `h ln(e m / h)`, capped at `m ln 2` (all
/// labelings) which is the binding term whenever `m` is close to or below `h`.
pub fn sauer_log_growth(h: u32, m: u64) -> f64 {
    debug_assert!(h >= 1 && m >= 1);
    let (h, m) = (h as f64, m as f64);
    let shattered = m * std::f64::consts::LN_2;
    if m < h {
        shattered
    } else {
        (h * (m / h).ln() + h).min(shattered)
    }
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(BoundError::invalid(
            "epsilon",
            format!("must lie in (0, 1), got {epsilon}"),
        ))
    }
}

/// Complexity-plus-confidence exponent `d` on a design of `m` points.
pub fn d_term(spec: ComplexitySpec, m: u64, epsilon: f64) -> Result<f64> {
    check_epsilon(epsilon)?;
    spec.validate()?;
    if m == 0 {
        return Err(BoundError::invalid("m", "design size must be >= 1"));
    }
    Ok(match spec {
        ComplexitySpec::ExplicitD(d) => d,
        ComplexitySpec::LogClassSize(l) => l + (1.0 / epsilon).ln(),
        ComplexitySpec::VcDim(h) => sauer_log_growth(h, m) + (1.0 / epsilon).ln(),
    })
}

/// Log of Haussler's bound `e (h+1) (2e/xi)^h` on the size of a
/// `xi`-covering net for a class of VC dimension `h`.
pub fn haussler_log_cover(h: u32, xi: f64) -> Result<f64> {
    if !(xi > 0.0 && xi <= 1.0) {
        return Err(BoundError::invalid(
            "xi",
            format!("must lie in (0, 1], got {xi}"),
        ));
    }
    let h = h as f64;
    Ok(1.0 + (h + 1.0).ln() + h * (2.0 * std::f64::consts::E / xi).ln())
}

/// `ceil(e^j)` for `j = 1..=44`, every power of `e` below `u64::MAX`.
const CEIL_EXP: [u64; 44] = [
    3,
    8,
    21,
    55,
    149,
    404,
    1097,
    2981,
    8104,
    22027,
    59875,
    162755,
    442414,
    1202605,
    3269018,
    8886111,
    24154953,
    65659970,
    178482301,
    485165196,
    1318815735,
    3584912847,
    9744803447,
    26489122130,
    72004899338,
    195729609429,
    532048240602,
    1446257064292,
    3931334297145,
    10686474581525,
    29048849665248,
    78962960182681,
    214643579785917,
    583461742527455,
    1586013452313431,
    4311231547115196,
    11719142372802612,
    31855931757113757,
    86593400423993747,
    235385266837019986,
    639843493530054950,
    1739274941520501048,
    4727839468229346562,
    12851600114359308276,
];

/// Largest `j >= 0` with `e^j <= n`, i.e. `floor(ln n)`, by exact integer
/// comparison (`e^j` is irrational, so `e^j <= n` iff `ceil(e^j) <= n`).
pub fn floor_ln(n: u64) -> u32 {
    CEIL_EXP.iter().take_while(|&&c| c <= n).count() as u32
}

/// Which logarithm of the number of chaining levels enters `d_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelEntropy {
    /// `ln floor(ln N)`: the prior spreads its mass over the levels that exist.
    #[default]
    LevelCount,
    /// `ln ln N`, the real-valued upper bound of the above.
    RealLog,
}

/// One level of the single-step chaining grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainLevel {
    pub j: u32,
    /// `floor((k+1) N e^-j) / ((k+1) N)`
    pub xi_j: f64,
    /// Entropy of the pair (hypothesis, net point) at this level.
    pub d_j: f64,
    /// Entropy of the net point alone.
    pub d_j_prime: f64,
}

/// Chaining levels `j = 1..=floor(ln N)` that have a nonempty grid cell,
/// using the default [`LevelEntropy::LevelCount`] term.
pub fn chain_levels(n: u64, k: u64, h: u32, epsilon: f64) -> Result<Vec<ChainLevel>> {
    chain_levels_with(n, k, h, epsilon, LevelEntropy::default())
}

pub fn chain_levels_with(
    n: u64,
    k: u64,
    h: u32,
    epsilon: f64,
    entropy: LevelEntropy,
) -> Result<Vec<ChainLevel>> {
    check_epsilon(epsilon)?;
    if n < 2 {
        return Err(BoundError::invalid("N", "chaining needs N >= 2"));
    }
    if k == 0 {
        return Err(BoundError::invalid("k", "must be >= 1"));
    }
    if h == 0 {
        return Err(BoundError::invalid("h", "VC dimension must be >= 1"));
    }
    let max_j = floor_ln(n);
    if max_j == 0 {
        return Ok(Vec::new());
    }
    let design = ((k + 1) * n) as f64;
    let hf = h as f64;
    let log_levels = match entropy {
        LevelEntropy::LevelCount => (max_j as f64).ln(),
        LevelEntropy::RealLog => (n as f64).ln().ln(),
    };
    // ln(e * levels * (h+1))
    let level_entropy = 1.0 + log_levels + (hf + 1.0).ln();
    let conf = (1.0 / epsilon).ln();
    let e = std::f64::consts::E;

    let mut levels = Vec::with_capacity(max_j as usize);
    for j in 1..=max_j {
        let cells = (design * (-(j as f64)).exp()).floor();
        if cells < 1.0 {
            continue;
        }
        let xi_j = cells / design;
        let d_j = hf * (2.0 * e * e * design / (hf * xi_j)).ln() + level_entropy + conf;
        let d_j_prime = hf * (2.0 * e / xi_j).ln() + level_entropy + conf;
        levels.push(ChainLevel {
            j,
            xi_j,
            d_j,
            d_j_prime,
        });
    }
    Ok(levels)
}

//! Every bound is nonincreasing in N and epsilon and nondecreasing in h and
//! r1, checked pointwise along fixed grids. Each check returns the number of
//! evaluations, or a description of the first violation.

use vc_bounds::bounds::{BoundInput, BoundKind, Theorem};

const SLACK: f64 = 1e-12;

const NS: [u64; 9] = [
    100, 200, 500, 1_000, 3_000, 10_000, 100_000, 1_000_000, 10_000_000,
];
const EPSILONS: [f64; 7] = [1e-5, 1e-4, 1e-3, 0.005, 0.01, 0.05, 0.2];
const HS: [u32; 4] = [1, 3, 10, 20];
const KS: [u64; 4] = [1, 4, 19, 257];
const R1S: [f64; 4] = [0.0, 0.05, 0.2, 0.4];

pub type Outcome = Result<usize, String>;
pub type Check = fn() -> Outcome;

/// Bound value and validity flag, with "no certified level" read as an
/// infinite, invalid bound.
fn value(kind: &BoundKind, input: &BoundInput) -> (f64, bool) {
    match kind.evaluate(input) {
        Ok(r) => (r.value, r.valid),
        Err(vc_bounds::BoundError::NoCertifiedLevel { .. }) => (f64::INFINITY, false),
        Err(e) => panic!("{} at {input:?}: {e}", kind.theorem()),
    }
}

fn ks_for(theorem: Theorem) -> &'static [u64] {
    if matches!(
        theorem,
        Theorem::TransductiveImprovedK1 | Theorem::InductiveExchangeableK1
    ) {
        &KS[..1]
    } else {
        &KS
    }
}

pub struct Violation {
    pub theorem: Theorem,
    pub from: f64,
    pub to: f64,
    /// whether the smaller of the two values is valid and at most 1
    pub to_meaningful: bool,
    pub at: (BoundInput, BoundInput),
}

/// Pairs along a chain where `value(inputs[i]) > value(inputs[i + 1])`.
fn decreases(kind: &BoundKind, chain: &[BoundInput]) -> Vec<Violation> {
    chain
        .windows(2)
        .filter_map(|w| {
            let ((from, _), (to, valid)) = (value(kind, &w[0]), value(kind, &w[1]));
            (from > to + SLACK).then(|| Violation {
                theorem: kind.theorem(),
                from,
                to,
                to_meaningful: valid && to <= 1.0,
                at: (w[0], w[1]),
            })
        })
        .collect()
}

/// Runs every theorem over the chains built for each `(k, r1)` and returns
/// the decreasing steps with the number of evaluations.
fn collect(build: impl Fn(u64, f64) -> Vec<Vec<BoundInput>>) -> (Vec<Violation>, usize) {
    let mut violations = Vec::new();
    let mut checked = 0usize;
    for theorem in Theorem::ALL {
        let kind = BoundKind::default_for(theorem);
        for &k in ks_for(theorem) {
            for r1 in R1S {
                for chain in build(k, r1) {
                    checked += chain.len();
                    violations.extend(decreases(&kind, &chain));
                }
            }
        }
    }
    (violations, checked)
}

fn none(what: &str, violations: &[Violation], checked: usize) -> Outcome {
    match violations.first() {
        None => Ok(checked),
        Some(v) => Err(format!(
            "{what}: {} violations, first {}: {} > {} at {:?} -> {:?}",
            violations.len(),
            v.theorem,
            v.from,
            v.to,
            v.at.0,
            v.at.1
        )),
    }
}

pub fn in_sample_size() -> Outcome {
    let (v, checked) = collect(|k, r1| {
        HS.iter()
            .flat_map(|&h| EPSILONS.map(|eps| (h, eps)))
            .map(|(h, eps)| {
                NS.iter()
                    .rev()
                    .map(|&n| BoundInput::vc(n, h, eps, r1, k))
                    .collect()
            })
            .collect()
    });
    none("N", &v, checked)
}

pub fn in_epsilon() -> Outcome {
    let (v, checked) = collect(|k, r1| {
        HS.iter()
            .flat_map(|&h| NS.map(|n| (h, n)))
            .map(|(h, n)| {
                EPSILONS
                    .iter()
                    .rev()
                    .map(|&eps| BoundInput::vc(n, h, eps, r1, k))
                    .collect()
            })
            .collect()
    });
    none("epsilon", &v, checked)
}

pub fn in_vc_dimension() -> Outcome {
    let (v, checked) = collect(|k, r1| {
        NS.iter()
            .flat_map(|&n| [1e-3, 0.01, 0.1].map(|eps| (n, eps)))
            .map(|(n, eps)| (1..=20).map(|h| BoundInput::vc(n, h, eps, r1, k)).collect())
            .collect()
    });
    none("h", &v, checked)
}

/// Decreasing steps along `r1 = 0, 0.01, ..., 0.5`.
pub fn r1_steps() -> (Vec<Violation>, usize) {
    collect(|k, r1| {
        if r1 != 0.0 {
            return Vec::new();
        }
        HS.iter()
            .flat_map(|&h| {
                NS.iter()
                    .flat_map(move |&n| [1e-3, 0.01, 0.1].map(|eps| (h, n, eps)))
            })
            .map(|(h, n, eps)| {
                (0..=50)
                    .map(|i| BoundInput::vc(n, h, eps, i as f64 / 100.0, k))
                    .collect()
            })
            .collect()
    })
}

/// The closed forms solve the `p (1 - p)` branch of the capped variance
/// `phi`. Past `p = 1/2` they no longer follow the capped display and a
/// larger `r1` can shrink the variance term; such points are flagged
/// invalid. The swap variance `r1 + r2 - 2 r1 r2` of the `k = 1` bounds
/// decreases in `r1` only once `r2 > 1/2`. So `r1` monotonicity is required
/// of valid values up to 1 (an error rate never exceeds 1).
pub fn in_training_error() -> Outcome {
    let (violations, checked) = r1_steps();
    let meaningful: Vec<Violation> = violations.into_iter().filter(|v| v.to_meaningful).collect();
    none("r1", &meaningful, checked)
}

/// Every check with the direction it covers.
pub const ALL: [(&str, Check); 4] = [
    ("N", in_sample_size),
    ("epsilon", in_epsilon),
    ("h", in_vc_dimension),
    ("r1", in_training_error),
];

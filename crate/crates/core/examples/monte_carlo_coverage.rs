//! Check by simulation that the transductive bounds hold with the stated
//! probability.
//!
//! Each trial draws 50 training and 50k shadow points from a noisy
//! threshold model, enumerates every labelling a grid of 200 thresholds
//! induces, and counts a violation when any of them has a shadow error
//! above its bound. The report gives an exact 99% interval on the
//! violation probability. Under index-dependent inputs only partial
//! exchangeability holds, and the `k = 1` bound that needs full
//! exchangeability is refused.

use vc_bounds::montecarlo::{verify, DataModel, HypothesisClass, InputLaw, Target, VerifyConfig};
use vc_bounds::{BoundKind, Theorem};

fn main() {
    let class = HypothesisClass::thresholds(200);
    let models = [
        ("uniform", DataModel::uniform_threshold(0.3, 0.1)),
        (
            "staggered",
            DataModel::new(InputLaw::staggered(), Target::Threshold { t: 0.3 }, 0.1),
        ),
    ];

    for (label, model) in &models {
        for (theorem, k) in [
            (Theorem::TransductiveBasic, 2),
            (Theorem::TransductiveImprovedK1, 1),
            (Theorem::TransductiveImproved, 4),
        ] {
            let cfg = VerifyConfig {
                n: 50,
                k,
                epsilon: 0.1,
                trials: 2_000,
                seed: 1,
            };
            let report = match verify(&BoundKind::default_for(theorem), model, &class, &cfg) {
                Ok(report) => report,
                Err(e) => {
                    println!("{label:<9} {:<26} k={k}  refused: {e}", theorem.tag());
                    continue;
                }
            };
            println!(
                "{label:<9} {:<26} k={k}  violations {:>3}/{}  99% upper limit {:.4}  target {}",
                theorem.tag(),
                report.violations,
                report.trials,
                report.upper_confidence_limit,
                report.target
            );
        }
    }
}

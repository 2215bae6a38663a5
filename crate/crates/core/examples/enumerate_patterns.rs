//! Effective class size of thresholds and intervals on a random design,
//! against the Sauer bound for their VC dimension.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vc_bounds::complexity::sauer_log_growth;
use vc_bounds::montecarlo::{pattern_errors, DataModel, HypothesisClass};

fn main() -> Result<(), vc_bounds::BoundError> {
    let model = DataModel::uniform_threshold(0.5, 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(3);

    for class in [
        HypothesisClass::thresholds(1000),
        HypothesisClass::intervals(200),
    ] {
        let h = class.vc_dim().expect("grid classes have a VC dimension");
        for m in [5usize, 20, 80] {
            let s = model.sample(m, 1, &mut rng);
            let patterns = pattern_errors(&class, &s.xs, &s.ys, m)?.len();
            let design = 2 * m as u64;
            println!(
                "{:<10} h={h} design {design:>3}: {patterns:>5} patterns, Sauer allows {:>9.0}",
                class.name(),
                sauer_log_growth(h, design).exp()
            );
        }
    }
    Ok(())
}

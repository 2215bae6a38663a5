//! The chained relative bound at a million training points: per-level
//! coefficients for one `k`, then the joint search over `(k, j)`.

use vc_bounds::bounds::{chain_coefficients, relative_chained, solve_chained};
use vc_bounds::complexity::LevelEntropy;
use vc_bounds::optimizer::optimize_kj;
use vc_bounds::{BoundInput, Level};

fn main() -> Result<(), vc_bounds::BoundError> {
    let input = BoundInput::vc(1_000_000, 10, 0.005, 0.2, 257);

    println!(" j        xi_j        a        b    bound");
    for c in chain_coefficients(&input, LevelEntropy::LevelCount)? {
        let bound = solve_chained(input.r1, input.k as f64, c.a, c.b, c.xi);
        let shown = bound.map_or("  none".to_owned(), |v| format!("{v:.5}"));
        println!(
            "{:>2}  {:>10.3e}  {:.5}  {:.5}  {shown}",
            c.j, c.xi, c.a, c.b
        );
    }

    let best = relative_chained(&input, Level::Auto)?;
    println!(
        "best level at k=257: j={} value {:.5} (holds w.p. {})",
        best.get("j").unwrap_or(0.0),
        best.value,
        best.confidence
    );

    let joint = optimize_kj(&input, 2_000)?;
    println!(
        "joint minimum over k <= 2000: (k, j) = {:?}, bound {:.5}",
        joint.argmin, joint.best_value
    );
    Ok(())
}

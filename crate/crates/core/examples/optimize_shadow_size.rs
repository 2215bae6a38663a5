//! Search the shadow multiplier `k` and the trade-off `alpha`.
//!
//! A larger shadow sample tightens the complexity term only up to a point:
//! the design grows as `(k+1) N`, so the bound has an interior minimum.

use vc_bounds::optimizer::{default_alpha_grid, optimize_alpha, optimize_k};
use vc_bounds::{Alpha, BoundInput, BoundKind, DBar};

fn main() -> Result<(), vc_bounds::BoundError> {
    let input = BoundInput::vc(1000, 10, 0.01, 0.2, 1);

    for kind in [
        BoundKind::TransductiveImproved,
        BoundKind::InductiveNearOptimalLambda { dbar: DBar::DStar },
        BoundKind::InductiveBasicVariance { alpha: Alpha::Auto },
    ] {
        let opt = optimize_k(&kind, &input, 100)?;
        println!(
            "{:<30} best k = {:>3}  bound {:.5}  k printing the same 4-decimal bound: {:?}",
            kind.theorem().tag(),
            opt.argmin,
            opt.best_value,
            opt.printed_plateau(4)
        );
    }

    let tight = BoundKind::InductiveIntegratedTight { alpha: Alpha::Auto };
    let at_k19 = input.with_k(19);
    let auto = tight.evaluate(&at_k19)?;
    let grid = optimize_alpha(&tight, &at_k19, &default_alpha_grid())?;
    println!(
        "inductive-integrated-tight k=19: alpha auto {:.4} -> {:.5}, grid best alpha {:.4} -> {:.5}",
        auto.get("alpha").unwrap_or(f64::NAN),
        auto.value,
        grid.argmin,
        grid.best_value
    );
    Ok(())
}

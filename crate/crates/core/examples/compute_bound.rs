//! Evaluate every bound at one instance: 1000 training points, a class of
//! VC dimension 10, 20% training error, 99% confidence.
//!
//! ```text
//! cargo run --example compute_bound
//! ```

use vc_bounds::{BoundInput, BoundKind, Theorem};

fn main() -> Result<(), vc_bounds::BoundError> {
    let input = BoundInput::vc(1000, 10, 0.01, 0.2, 4);

    println!(
        "{:<32} {:>8}  {:<11} terms",
        "theorem", "bound", "significant"
    );
    for theorem in Theorem::ALL {
        let kind = BoundKind::default_for(theorem);
        // the fully exchangeable bounds only exist for k = 1
        let input = match theorem {
            Theorem::TransductiveImprovedK1 | Theorem::InductiveExchangeableK1 => input.with_k(1),
            _ => input,
        };
        let r = kind.evaluate(&input)?;
        let terms: Vec<String> = r.terms.iter().map(|(k, v)| format!("{k}={v:.3}")).collect();
        println!(
            "{:<32} {:>8.4}  {:<11} {}",
            theorem.tag(),
            r.value,
            r.significant,
            terms.join(" ")
        );
    }
    Ok(())
}

//! Recompute the table of published reference values and show how each one
//! is checked.

use vc_bounds::cli::reproduce::{reference_table, DEFAULT_TOLERANCE};

fn main() -> Result<(), vc_bounds::BoundError> {
    let rows = reference_table(DEFAULT_TOLERANCE)?;
    for r in &rows {
        println!(
            "{:<26} {:>22} {:>10.5}  {}",
            r.id,
            r.expected,
            r.computed,
            if r.pass { "ok" } else { "FAIL" }
        );
    }
    let passed = rows.iter().filter(|r| r.pass).count();
    println!("{passed}/{} rows pass", rows.len());
    Ok(())
}

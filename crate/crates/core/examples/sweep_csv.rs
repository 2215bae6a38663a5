//! Sweep the shadow multiplier and write the rows as CSV on stdout, the
//! same format `vc-bounds sweep` emits.
//!
//! ```text
//! cargo run --example sweep_csv > improved_k.csv
//! ```

use vc_bounds::cli::record::{bound_record, to_csv, OutputRecord};
use vc_bounds::optimizer::{sweep, Spacing, SweepParameter, SweepSpec};
use vc_bounds::{BoundInput, BoundKind};

fn main() -> Result<(), vc_bounds::BoundError> {
    let spec = SweepSpec {
        parameter: SweepParameter::K,
        from: 1.0,
        to: 40.0,
        spacing: Spacing::Step(1.0),
        bound: BoundKind::TransductiveImproved,
    };
    let input = BoundInput::vc(1000, 10, 0.01, 0.2, 1);

    let records: Vec<OutputRecord> = sweep(&spec, &input)?
        .into_iter()
        .map(|p| match &p.result {
            Ok(r) => bound_record(&p.input, r),
            Err(e) => {
                let mut rec = OutputRecord::new();
                rec.insert("k".into(), p.input.k.into());
                rec.insert("error".into(), e.to_string().into());
                rec
            }
        })
        .collect();
    print!("{}", to_csv(&records));
    Ok(())
}

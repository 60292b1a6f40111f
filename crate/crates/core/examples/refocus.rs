//! Echo refocusing of the always-on coupling between an adjacent pair.
//!
//! Run: `cargo run --release --example refocus`

use chainlab::model::{ChainSpec, ZeemanLevels};
use chainlab::schemes::refocus::{entangling_residual, refocus_demo, unrefocused};

fn main() -> chainlab::Result<()> {
    let pair = ChainSpec::patterned(2, "AB", 1.0, ZeemanLevels::from_delta(100.0, 1.0))?;
    println!("free evolution for t = 0.3: residual {:.3e}", entangling_residual(&unrefocused(&pair, 0.3)?)?);
    for p in refocus_demo(&pair, &[1.0, 1e-1, 1e-2, 1e-3, 1e-4])? {
        println!("pulse period {:>7.0e}: residual {:.3e}", p.pulse_period, p.residual);
    }
    Ok(())
}

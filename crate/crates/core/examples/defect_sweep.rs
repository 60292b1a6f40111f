//! Worst-case basis-state defect of the nine-spin `Ĝ` gate against detuning.
//!
//! Run: `cargo run --release --example defect_sweep [out.csv]`

use std::path::PathBuf;

use chainlab::analysis::{defect_sweep, emit_table, SweepSpec, TableFormat};

fn main() -> chainlab::Result<()> {
    let records = defect_sweep(&SweepSpec::default())?;
    println!("{:>8} {:>10} {:>12} {:>12} {:>12}", "delta", "t_r", "defect", "phase(prob)", "leakage");
    for r in &records {
        println!(
            "{:>8} {:>10.6} {:>12.3e} {:>12.3e} {:>12.3e}",
            r.delta,
            r.t_r,
            r.defect_worst,
            r.phase_noise_probability(),
            r.leakage
        );
    }
    if let Some(path) = std::env::args().nth(1).map(PathBuf::from) {
        emit_table(&records, &path, TableFormat::Csv)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

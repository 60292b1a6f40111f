//! Architecture 2: single-qubit flip-flop rotation and the two-qubit phase
//! gate at the pair resonance.
//!
//! Run: `cargo run --release --example m_gate [delta]`

use std::f64::consts::PI;

use chainlab::model::ZeemanLevels;
use chainlab::schemes::arch2;

fn main() -> chainlab::Result<()> {
    let delta: f64 = std::env::args().nth(1).map_or(Ok(1000.0), |s| s.parse()).expect("delta must be a number");
    let j = 1.0;
    let levels = ZeemanLevels::from_delta(delta, j);

    let k = arch2::rabi_rate(j);
    for kt in [PI / 4.0, PI / 2.0] {
        let p = arch2::single_qubit_transfer(&levels, j, 0.0, kt / k)?;
        println!("single qubit, k t = {kt:.4}: transfer {p:.6}");
    }

    let eps = levels.two_qubit_resonance(j);
    let t_r = arch2::pair_revival_time(j);
    let gate = arch2::pair_gate(&levels, j, eps, t_r)?;
    println!("pair gate at eps = {eps}, t = {t_r:.6}:");
    println!("  conditional phase {:.6} (expected 2 J t = {:.6})", gate.corrections.phi, arch2::pair_phase(j));
    println!("  off-diagonal residual {:.3e}, leakage {:.3e}", gate.corrections.off_diagonal_residual, gate.report.leakage);
    println!("  locally diagonal: {}", gate.locally_diagonal);
    Ok(())
}

//! Convergence of Heisenberg evolution to the effective Ising form.
//!
//! Run: `cargo run --release --example ising_limit`

use chainlab::analysis::ising_convergence;

fn main() -> chainlab::Result<()> {
    let grid = [0.0, 10.0, 20.0, 50.0, 100.0, 200.0, 500.0, 1000.0];
    let conv = ising_convergence(&grid, 1.0)?;
    for r in &conv.records {
        println!("delta {:>6}: distance {:.3e}, leakage {:.3e}", r.delta, r.op_distance, r.leakage);
    }
    println!("slopes: leakage {:.3}, distance {:.3}", conv.leakage_slope, conv.distance_slope);
    Ok(())
}

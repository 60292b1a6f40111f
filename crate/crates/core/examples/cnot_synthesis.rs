//! Searches for single-qubit layers that turn repeated entanglers into CNOT.
//!
//! Run: `cargo run --release --example cnot_synthesis`

use std::time::Instant;

use chainlab::gates::{g_gate, m_gate, minimal_uses, SynthesisConfig};

fn main() -> chainlab::Result<()> {
    let cfg = SynthesisConfig::default();
    for (name, gate) in [("G", g_gate()), ("M", m_gate())] {
        let t0 = Instant::now();
        let report = minimal_uses(&gate, 4, &cfg)?;
        for a in &report.attempts {
            println!("{name}: {} uses -> F = {:.12} (start {})", a.n_uses, a.fidelity, a.best_start);
        }
        match report.minimal {
            Some(n) => println!("{name}: CNOT reached with {n} uses in {:.1?}", t0.elapsed()),
            None => println!("{name}: no CNOT within 4 uses"),
        }
    }
    Ok(())
}

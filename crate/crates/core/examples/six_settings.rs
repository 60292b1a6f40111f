//! Architecture 3: apply each of the six global settings to a twelve-spin
//! chain and show which qubits move.
//!
//! Run: `cargo run --release --example six_settings [delta]`

use chainlab::gates::{align_z_phases, local_equivalence_invariants, LocalInvariants};
use chainlab::linalg::ComplexMatrix;
use chainlab::model::ZeemanLevels;
use chainlab::schemes::arch3::{self, Tuning};
use chainlab::schemes::reduced_gate;

fn main() -> chainlab::Result<()> {
    let delta: f64 = std::env::args().nth(1).map_or(Ok(1000.0), |s| s.parse()).expect("delta must be a number");
    let j = 1.0;
    let nq = 4;
    let chain = arch3::chain(nq, ZeemanLevels::from_delta(delta, j), j)?;
    let id = ComplexMatrix::identity(2);
    for setting in arch3::six_settings(j) {
        let report = arch3::setting_report(&setting, &chain)?;
        print!("{:<10} t = {:.4}  leakage {:.2e}", setting.label(), setting.duration, report.leakage);
        if matches!(setting.even, Tuning::Entangle) || matches!(setting.odd, Tuning::Entangle) {
            // an active odd side couples each odd qubit to the even one on its right
            let pairs: Vec<[usize; 2]> = if setting.odd != Tuning::Idle {
                (1..nq - 1).step_by(2).map(|q| [q, q + 1]).collect()
            } else {
                arch3::entangling_pairs(nq)
            };
            let d: Vec<String> = pairs
                .iter()
                .map(|p| {
                    let inv = local_equivalence_invariants(&reduced_gate(&report.logical_unitary, p, nq)?)?;
                    Ok(format!("{p:?}: {:.3}", inv.distance(&LocalInvariants::identity_class())))
                })
                .collect::<chainlab::Result<_>>()?;
            println!("  pair invariant distance from identity {}", d.join(", "));
        } else {
            let moved: Vec<String> = arch3::single_qubit_gates(&report, nq)?
                .iter()
                .map(|g| align_z_phases(g, &id).map(|f| format!("{:.1e}", f.distance)))
                .collect::<chainlab::Result<_>>()?;
            println!("  distance from identity per qubit [{}]", moved.join(", "));
        }
    }
    Ok(())
}

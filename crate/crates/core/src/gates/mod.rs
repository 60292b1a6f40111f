//! Logical gate extraction, revival search, local invariants and CNOT synthesis.
//!
//! Comparison protocol: strip the passive Zeeman frame, extract the encoded
//! block, fit per-qubit z-phases and a global phase against the target, and
//! independently compare frame-free [`LocalInvariants`].

mod corrections;
mod encoding;
mod extract;
pub mod ideal;
mod invariants;
mod optim;
mod revival;
mod synthesis;

pub use corrections::{derive_local_corrections, local_phase_decomposition, wrap_angle, LocalCorrections, OFF_DIAGONAL_LIMIT};
pub use encoding::{Barrier, EncodingMap};
pub use extract::{
    align_z_phases, apply_z_phases, basis_defects, compare_to, extract_from_columns, extract_gate, GateReport, ZPhaseFit,
    LEAKAGE_LIMIT, POLAR_LEAKAGE,
};
pub use ideal::{cnot, controlled_phase, g_gate, m_gate};
pub use invariants::{local_equivalence_invariants, LocalInvariants};
pub use revival::{find_revival, BarrierProbe, Revival, RevivalConfig};
pub use synthesis::{
    best_synthesis, cnot_fidelity, minimal_uses, synthesize_cnot, MinimalUses, SynthesisConfig, SynthesisResult,
    MAX_USES, MIN_FIDELITY, SUCCESS_FIDELITY,
};

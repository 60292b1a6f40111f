//! Concrete chain layouts, their Zeeman schedules, and the studies built on them.

pub mod arch1;
pub mod arch2;
pub mod arch3;
pub mod refocus;
pub mod zeno;

use crate::error::{Error, Result};
use crate::evolve::{strip_state, Evolver, StateVector, ZeemanSchedule};
use crate::gates::EncodingMap;
use crate::linalg::{polar_unitary, ComplexMatrix, C64};

/// Product state with every qubit in `|0⟩_L` and every barrier in its reference.
pub fn initialize_barriers(enc: &EncodingMap) -> StateVector {
    StateVector::product(&enc.spins(0))
}

/// Images of the logical basis states under `schedule`, in the frame of the
/// passive pattern.
pub fn logical_columns(
    evolver: &Evolver,
    schedule: &ZeemanSchedule,
    enc: &EncodingMap,
    passive: &[f64],
) -> Result<Vec<Vec<C64>>> {
    let cols = evolver.evolve_basis_states(schedule, &enc.basis_states())?;
    let t = schedule.total_time();
    cols.iter().map(|c| strip_state(c, passive, t)).collect()
}

/// Gate acting on `qubits` of an `nq`-qubit unitary that is close to a
/// product with the rest: the block with the largest norm over basis choices
/// of the other qubits, re-unitarized.
pub fn reduced_gate(u: &ComplexMatrix, qubits: &[usize], nq: usize) -> Result<ComplexMatrix> {
    if u.dim() != 1 << nq {
        return Err(Error::DimensionMismatch { expected: 1 << nq, found: u.dim() });
    }
    if let Some(&q) = qubits.iter().find(|&&q| q >= nq) {
        return Err(Error::InvalidEncoding(format!("qubit {q} out of range for {nq} qubits")));
    }
    let others: Vec<usize> = (0..nq).filter(|q| !qubits.contains(q)).collect();
    let index = |sub: usize, rest: usize| {
        let mut idx = 0;
        for (k, &q) in qubits.iter().enumerate() {
            idx |= ((sub >> (qubits.len() - 1 - k)) & 1) << (nq - 1 - q);
        }
        for (k, &q) in others.iter().enumerate() {
            idx |= ((rest >> (others.len() - 1 - k)) & 1) << (nq - 1 - q);
        }
        idx
    };
    let d = 1 << qubits.len();
    let mut best: Option<(f64, ComplexMatrix)> = None;
    for a in 0..1usize << others.len() {
        for b in 0..1usize << others.len() {
            let block = ComplexMatrix::from_fn(d, |i, j| u[(index(i, b), index(j, a))]);
            let norm = block.frobenius_norm();
            if best.as_ref().is_none_or(|(n, _)| norm > *n) {
                best = Some((norm, block));
            }
        }
    }
    Ok(polar_unitary(&best.expect("at least one block").1))
}

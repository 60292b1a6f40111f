use serde::{Deserialize, Serialize};

use super::encoding::EncodingMap;
use super::invariants::{local_equivalence_invariants, LocalInvariants};
use super::optim::minimize;
use crate::error::{Error, Result};
use crate::linalg::{best_global_phase, polar_unitary, ComplexMatrix, C64};

/// Leakage above which an extracted block is rejected.
pub const LEAKAGE_LIMIT: f64 = 0.1;
/// Leakage below which the block is re-unitarized by polar projection.
pub const POLAR_LEAKAGE: f64 = 1e-3;

/// Extracted logical gate and its quality metrics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateReport {
    pub logical_unitary: ComplexMatrix,
    /// Max over logical inputs of the probability leaving the encoded subspace.
    pub leakage: f64,
    pub revival_time: Option<f64>,
    /// Per-qubit z-phase angles `(left, right)` removed before comparison.
    pub residual_local_phases: Vec<[f64; 2]>,
    pub invariants_pair: Option<LocalInvariants>,
    /// Max over logical basis inputs of `1 - |⟨ideal|actual⟩|²`.
    pub defect_worst: Option<f64>,
    pub op_distance: Option<f64>,
    pub invariants_distance: Option<f64>,
}

impl GateReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn report_from_block(block: ComplexMatrix) -> Result<GateReport> {
    let d = block.dim();
    let leakage = (0..d)
        .map(|c| 1.0 - block.column(c).iter().map(|z| z.norm_sqr()).sum::<f64>())
        .fold(0.0, f64::max)
        .clamp(0.0, 1.0);
    if leakage > LEAKAGE_LIMIT {
        return Err(Error::ExcessiveLeakage { leakage, limit: LEAKAGE_LIMIT });
    }
    let logical_unitary = if leakage < POLAR_LEAKAGE { polar_unitary(&block) } else { block };
    let invariants_pair = if d == 4 { local_equivalence_invariants(&logical_unitary).ok() } else { None };
    Ok(GateReport {
        logical_unitary,
        leakage,
        revival_time: None,
        residual_local_phases: Vec::new(),
        invariants_pair,
        defect_worst: None,
        op_distance: None,
        invariants_distance: None,
    })
}

/// Restricts `U_full` to the encoded subspace (barriers in reference states).
pub fn extract_gate(u_full: &ComplexMatrix, enc: &EncodingMap) -> Result<GateReport> {
    if u_full.dim() != 1 << enc.n {
        return Err(Error::DimensionMismatch { expected: 1 << enc.n, found: u_full.dim() });
    }
    report_from_block(u_full.submatrix(&enc.basis_states()))
}

/// Same as [`extract_gate`] from the evolved images of the logical basis
/// states, in logical order. Avoids forming the dense propagator.
pub fn extract_from_columns(columns: &[Vec<C64>], enc: &EncodingMap) -> Result<GateReport> {
    let basis = enc.basis_states();
    if columns.len() != basis.len() {
        return Err(Error::DimensionMismatch { expected: basis.len(), found: columns.len() });
    }
    for c in columns {
        if c.len() != 1 << enc.n {
            return Err(Error::DimensionMismatch { expected: 1 << enc.n, found: c.len() });
        }
    }
    report_from_block(ComplexMatrix::from_fn(basis.len(), |r, c| columns[c][basis[r]]))
}

/// Per-qubit z-phases and global phase bringing a gate closest to a target.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZPhaseFit {
    /// `(left, right)` angle per qubit; the qubit's `|1⟩` picks up `e^{i·angle}`.
    pub phases: Vec<[f64; 2]>,
    pub global_phase: f64,
    /// Entrywise max distance after alignment.
    pub distance: f64,
    pub aligned: ComplexMatrix,
}

fn phase_diagonal(angles: &[f64]) -> Vec<C64> {
    let nq = angles.len();
    (0..1usize << nq)
        .map(|s| {
            let a: f64 = (0..nq).filter(|q| (s >> (nq - 1 - q)) & 1 == 1).map(|q| angles[q]).sum();
            C64::from_polar(1.0, a)
        })
        .collect()
}

/// `D_L · U · D_R` for per-qubit diagonal phases.
pub fn apply_z_phases(u: &ComplexMatrix, left: &[f64], right: &[f64]) -> ComplexMatrix {
    let (l, r) = (phase_diagonal(left), phase_diagonal(right));
    ComplexMatrix::from_fn(u.dim(), |i, j| l[i] * u[(i, j)] * r[j])
}

/// Minimizes `max |D_L U D_R - e^{iγ} T|` over per-qubit z-phases on both
/// sides and the global phase.
pub fn align_z_phases(u: &ComplexMatrix, target: &ComplexMatrix) -> Result<ZPhaseFit> {
    if u.dim() != target.dim() || !u.dim().is_power_of_two() {
        return Err(Error::DimensionMismatch { expected: target.dim(), found: u.dim() });
    }
    let nq = u.dim().trailing_zeros() as usize;
    let split = |x: &[f64]| (x[..nq].to_vec(), x[nq..].to_vec());
    // Frobenius cost with the optimal global phase eliminated in closed form
    let smooth = |x: &[f64]| {
        let (l, r) = split(x);
        let a = apply_z_phases(u, &l, &r);
        let overlap: C64 = a.data().iter().zip(target.data()).map(|(p, q)| q.conj() * p).sum();
        a.frobenius_norm().powi(2) + target.frobenius_norm().powi(2) - 2.0 * overlap.norm()
    };
    let dims = 2 * nq;
    let grid = if dims <= 4 { 8usize } else { 3 };
    let mut starts: Vec<(f64, Vec<f64>)> = (0..grid.pow(dims as u32))
        .map(|mut k| {
            let x: Vec<f64> = (0..dims)
                .map(|_| {
                    let v = (k % grid) as f64 * std::f64::consts::TAU / grid as f64;
                    k /= grid;
                    v
                })
                .collect();
            (smooth(&x), x)
        })
        .collect();
    starts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best: Option<ZPhaseFit> = None;
    for (_, x0) in starts.into_iter().take(4) {
        let (x, _) = minimize(&smooth, x0, 0.3, 4000, 4, 1e-15)?;
        let (l, r) = split(&x);
        let aligned = apply_z_phases(u, &l, &r);
        let (global_phase, distance) = best_global_phase(&aligned, target)?;
        if best.as_ref().is_none_or(|b| distance < b.distance) {
            let wrap = |a: f64| (a + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU) - std::f64::consts::PI;
            best = Some(ZPhaseFit {
                phases: l.iter().zip(&r).map(|(a, b)| [wrap(*a), wrap(*b)]).collect(),
                global_phase,
                distance,
                aligned: aligned.scale(C64::from_polar(1.0, -global_phase)),
            });
        }
    }
    Ok(best.expect("at least one start"))
}

/// Per-input population defects `1 - |⟨T e_k| U e_k⟩|²`.
pub fn basis_defects(u: &ComplexMatrix, target: &ComplexMatrix) -> Vec<f64> {
    (0..u.dim())
        .map(|k| {
            let ov: C64 = u.column(k).iter().zip(target.column(k)).map(|(a, b)| b.conj() * a).sum();
            (1.0 - ov.norm_sqr()).max(0.0)
        })
        .collect()
}

/// Fills in comparison metrics of `report` against `target`.
pub fn compare_to(report: &mut GateReport, target: &ComplexMatrix) -> Result<ZPhaseFit> {
    let fit = align_z_phases(&report.logical_unitary, target)?;
    report.residual_local_phases = fit.phases.clone();
    report.op_distance = Some(fit.distance);
    report.defect_worst = Some(basis_defects(&fit.aligned, target).into_iter().fold(0.0, f64::max));
    if let (Some(inv), Ok(t)) = (report.invariants_pair, local_equivalence_invariants(target)) {
        report.invariants_distance = Some(inv.distance(&t));
    }
    Ok(fit)
}

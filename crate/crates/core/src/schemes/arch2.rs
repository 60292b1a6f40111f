//! Two-spin qubits on `ABC` triples: qubit = (A-site, B-site), C-site barrier `|↑⟩`.
//!
//! Single-qubit control tunes the B-site near `A`; two-qubit control tunes it
//! near `C`, where it exchanges with the barrier and picks up a conditional
//! phase from the next qubit's A-site.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::evolve::{Evolver, ZeemanSchedule};
use crate::gates::{
    derive_local_corrections, extract_from_columns, local_phase_decomposition, Barrier, BarrierProbe, EncodingMap, GateReport, LocalCorrections,
    Revival, RevivalConfig,
};
use crate::model::{parse_roles, ChainSpec, Coupling, Spin, ZeemanLevels};

use super::logical_columns;

/// Guard C, then one qubit triple.
pub const SINGLE_ROLES: &str = "CABC";
pub const SINGLE_QUBIT: [usize; 2] = [1, 2];
/// Two full triples.
pub const PAIR_ROLES: &str = "ABCABC";
pub const PAIR_QUBITS: [[usize; 2]; 2] = [[0, 1], [3, 4]];
pub const PAIR_BARRIERS: [usize; 2] = [2, 5];

/// Single-qubit precession rate at exact resonance: the flip-flop amplitude `2J`.
pub fn rabi_rate(j: f64) -> f64 {
    2.0 * j
}

/// Revival of the two-qubit exchange, `π/(√5 J)`.
pub fn pair_revival_time(j: f64) -> f64 {
    PI / (5f64.sqrt() * j)
}

/// Conditional phase accumulated over one revival, `2J·t_r = 2π/√5`.
pub fn pair_phase(j: f64) -> f64 {
    2.0 * j * pair_revival_time(j)
}

fn energies(roles: &str, levels: &ZeemanLevels) -> Vec<f64> {
    roles
        .chars()
        .map(|c| match c {
            'A' => levels.a,
            'B' => levels.b,
            _ => levels.c,
        })
        .collect()
}

pub fn single_chain(levels: ZeemanLevels, j: f64) -> Result<ChainSpec> {
    ChainSpec::new(j, parse_roles(SINGLE_ROLES)?, levels)
}

pub fn pair_chain(levels: ZeemanLevels, j: f64) -> Result<ChainSpec> {
    ChainSpec::new(j, parse_roles(PAIR_ROLES)?, levels)
}

pub fn single_encoding() -> EncodingMap {
    let up = |site| Barrier { site, reference: Spin::Up };
    EncodingMap::new(4, vec![SINGLE_QUBIT.to_vec()], vec![up(0), up(3)]).expect("static layout")
}

pub fn pair_encoding() -> EncodingMap {
    let barriers = PAIR_BARRIERS.iter().map(|&site| Barrier { site, reference: Spin::Up }).collect();
    EncodingMap::new(6, PAIR_QUBITS.iter().map(|q| q.to_vec()).collect(), barriers).expect("static layout")
}

/// Qubit B-site at `A + delta` for `t`.
pub fn arch2_single_qubit_schedule(levels: &ZeemanLevels, delta: f64, t: f64) -> (ZeemanSchedule, EncodingMap) {
    let mut e = energies(SINGLE_ROLES, levels);
    e[SINGLE_QUBIT[1]] = levels.a + delta;
    (ZeemanSchedule::new().then(t, e), single_encoding())
}

/// Qubit X's B-site at `eps` for `t_gate`.
pub fn arch2_two_qubit_schedule_at(levels: &ZeemanLevels, eps: f64, t_gate: f64) -> (ZeemanSchedule, EncodingMap) {
    let mut e = energies(PAIR_ROLES, levels);
    e[PAIR_QUBITS[0][1]] = eps;
    (ZeemanSchedule::new().then(t_gate, e), pair_encoding())
}

/// Two-qubit schedule at the resonance `C - J`.
pub fn arch2_two_qubit_schedule(levels: &ZeemanLevels, j: f64, t_gate: f64) -> (ZeemanSchedule, EncodingMap) {
    arch2_two_qubit_schedule_at(levels, levels.two_qubit_resonance(j), t_gate)
}

/// Logical single-qubit gate of [`arch2_single_qubit_schedule`].
pub fn single_qubit_report(levels: &ZeemanLevels, j: f64, delta: f64, t: f64) -> Result<GateReport> {
    let chain = single_chain(*levels, j)?;
    let (sched, enc) = arch2_single_qubit_schedule(levels, delta, t);
    let ev = Evolver::for_chain(&chain, Coupling::Heisenberg);
    extract_from_columns(&logical_columns(&ev, &sched, &enc, &chain.passive_energies())?, &enc)
}

/// `|1⟩_L` population after `t` from `|0⟩_L` at detuning `delta`.
pub fn single_qubit_transfer(levels: &ZeemanLevels, j: f64, delta: f64, t: f64) -> Result<f64> {
    let chain = single_chain(*levels, j)?;
    let (sched, enc) = arch2_single_qubit_schedule(levels, delta, t);
    let ev = Evolver::for_chain(&chain, Coupling::Heisenberg);
    let out = ev.evolve_basis_states(&sched, &[enc.physical_index(0)])?;
    Ok(out[0][enc.physical_index(1)].norm_sqr())
}

/// Revival of X's barrier while X's B-site sits at `eps`.
pub fn find_pair_revival(levels: &ZeemanLevels, j: f64, eps: f64, cfg: &RevivalConfig) -> Result<Revival> {
    let chain = pair_chain(*levels, j)?;
    let ev = Evolver::for_chain(&chain, Coupling::Heisenberg);
    let (sched, enc) = arch2_two_qubit_schedule_at(levels, eps, 1.0);
    let probe = BarrierProbe {
        evolver: &ev,
        energies: sched.segments[0].energies.clone(),
        inputs: enc.basis_states(),
        barrier_site: PAIR_BARRIERS[0],
        reference: Spin::Up,
    };
    probe.find((0.0, 4.0 / j), cfg)
}

/// Extracted two-qubit gate `K` and its diagonal corrections.
///
/// `corrections` is always filled from the diagonal phases; `locally_diagonal`
/// records whether the off-diagonal residual passes [`crate::gates::OFF_DIAGONAL_LIMIT`].
/// In the bare encoding each idle qubit mixes its two basis states at angle
/// about `J/Δ`, so the residual is of order `2/Δ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairGate {
    pub report: GateReport,
    pub corrections: LocalCorrections,
    pub locally_diagonal: bool,
}

pub fn pair_gate(levels: &ZeemanLevels, j: f64, eps: f64, t_gate: f64) -> Result<PairGate> {
    let chain = pair_chain(*levels, j)?;
    let (sched, enc) = arch2_two_qubit_schedule_at(levels, eps, t_gate);
    let ev = Evolver::for_chain(&chain, Coupling::Heisenberg);
    let mut report = extract_from_columns(&logical_columns(&ev, &sched, &enc, &chain.passive_energies())?, &enc)?;
    report.revival_time = Some(t_gate);
    let corrections = local_phase_decomposition(&report.logical_unitary)?;
    let locally_diagonal = derive_local_corrections(&report.logical_unitary).is_ok();
    Ok(PairGate { report, corrections, locally_diagonal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{align_z_phases, controlled_phase, local_equivalence_invariants, wrap_angle};
    use crate::linalg::{op_distance, pauli_x};
    use crate::model::{build_heisenberg, ChainSpec};

    const J: f64 = 1.0;

    fn levels() -> ZeemanLevels {
        ZeemanLevels::from_delta(1000.0, J)
    }

    #[test]
    fn one_down_per_triple() {
        pair_encoding().check_one_down_per_group(&[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        single_encoding().check_one_down_per_group(&[vec![1, 2, 3]]).unwrap();
    }

    #[test]
    fn rabi_rate_matches_two_site_oracle() {
        // two resonant sites with a ↓ on one: P(t) = sin²(2J t)
        let c = ChainSpec::patterned(2, "AB", J, levels()).unwrap();
        let h = build_heisenberg(&c, &[0.0, 0.0]).unwrap();
        let t = 0.3;
        let u = crate::linalg::expm_i(&h, t).unwrap();
        let oracle = u[(0b01, 0b10)].norm_sqr();
        assert!((oracle - (rabi_rate(J) * t).sin().powi(2)).abs() < 1e-12);
        let chain = single_transfer_at(t);
        assert!((chain - oracle).abs() < 1e-5, "{chain} vs {oracle}");
    }

    fn single_transfer_at(t: f64) -> f64 {
        single_qubit_transfer(&levels(), J, 0.0, t).unwrap()
    }

    #[test]
    fn bit_flip_and_superposition() {
        let k = rabi_rate(J);
        let flip = single_qubit_report(&levels(), J, 0.0, PI / (2.0 * k)).unwrap();
        let d = align_z_phases(&flip.logical_unitary, &pauli_x()).unwrap().distance;
        assert!(d < 1e-3, "{d}");
        let half = single_qubit_report(&levels(), J, 0.0, PI / (4.0 * k)).unwrap();
        let col = half.logical_unitary.column(0);
        assert!((col[0].norm_sqr() - 0.5).abs() < 1e-3 && (col[1].norm_sqr() - 0.5).abs() < 1e-3);
        // relative phase ±i up to a z-phase: (|0⟩ + i|1⟩)/√2 from exp(ikt σx)
        let rel = (col[1] / col[0]).arg().abs();
        assert!((rel - PI / 2.0).abs() < 1e-3, "{rel}");
    }

    #[test]
    fn detuned_transfer_is_bounded() {
        for delta in [20.0, 50.0] {
            let worst = (1..=200)
                .map(|k| single_qubit_transfer(&levels(), J, delta, k as f64 * 0.02).unwrap())
                .fold(0.0, f64::max);
            let bound = (2.0 * rabi_rate(J) / delta).powi(2);
            assert!(worst < bound, "delta {delta}: {worst} vs {bound}");
        }
    }

    #[test]
    fn zero_duration_is_identity() {
        let (s, _) = arch2_two_qubit_schedule(&levels(), J, 0.0);
        assert!(s.is_empty());
    }

    #[test]
    fn pair_revival_matches_analytic_time() {
        let r = find_pair_revival(&levels(), J, levels().two_qubit_resonance(J), &RevivalConfig::default()).unwrap();
        assert!((r.t_r - pair_revival_time(J)).abs() < 1e-3, "{r:?}");
        assert!(r.p_revival > 1.0 - 1e-4);
    }

    #[test]
    fn pair_gate_is_controlled_phase() {
        let g = pair_gate(&levels(), J, levels().two_qubit_resonance(J), pair_revival_time(J)).unwrap();
        assert!(g.report.leakage < 1e-4, "{}", g.report.leakage);
        let c = g.corrections;
        assert!(c.off_diagonal_residual < 2.0 / 1000.0, "{}", c.off_diagonal_residual);
        // oracle: each branch of the exchange picks up e^{∓iJ t_r} relative to
        // the idle branch, giving a conditional phase of 2J·t_r
        assert!((c.phi.abs() - wrap_angle(pair_phase(J)).abs()).abs() < 1e-3, "{}", c.phi);
        let inv = local_equivalence_invariants(&g.report.logical_unitary).unwrap();
        let expect = local_equivalence_invariants(&controlled_phase(pair_phase(J))).unwrap();
        assert!(inv.distance(&expect) < 1e-3);
    }

    #[test]
    fn literal_c_plus_j_leaks() {
        let lv = levels();
        let r = pair_gate(&lv, J, lv.c + J, pair_revival_time(J));
        match r {
            Ok(g) => assert!(g.report.leakage > 0.01, "{}", g.report.leakage),
            Err(e) => assert!(matches!(e, crate::Error::ExcessiveLeakage { .. })),
        }
    }

    #[test]
    fn off_diagonal_residual_shrinks_with_detuning() {
        let lv = ZeemanLevels::from_delta(1e4, J);
        let g = pair_gate(&lv, J, lv.two_qubit_resonance(J), pair_revival_time(J)).unwrap();
        assert!(g.corrections.off_diagonal_residual < 2.0 / 1e4);
        assert!(g.locally_diagonal);
    }

    #[test]
    fn vanishing_duration_is_identity() {
        let g = pair_gate(&levels(), J, levels().two_qubit_resonance(J), 1e-12).unwrap();
        assert!(op_distance(&g.report.logical_unitary, &crate::linalg::ComplexMatrix::identity(4)).unwrap() < 1e-8);
    }
}

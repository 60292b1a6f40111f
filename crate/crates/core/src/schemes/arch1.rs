//! Single-spin qubits on alternate sites of a nine-spin `BABABABAB` section.
//!
//! Sites 1, 3, 5, 7 carry qubits W, X, Y, Z. Barriers alternate `↓ ↑ ↓ ↑ ↓`
//! from site 0; the `↓` barrier on site 4 mediates the X–Y gate when tuned
//! to `A + J`.

use std::f64::consts::PI;

use crate::error::Result;
use crate::evolve::{Evolver, ZeemanSchedule};
use crate::gates::{
    compare_to, extract_from_columns, g_gate, Barrier, BarrierProbe, EncodingMap, GateReport, Revival, RevivalConfig,
    ZPhaseFit,
};
use crate::model::{parse_roles, ChainSpec, Coupling, Spin, ZeemanLevels};

use super::logical_columns;

pub const N_SITES: usize = 9;
pub const ROLES: &str = "BABABABAB";
pub const GATE_BARRIER: usize = 4;
pub const QUBIT_SITES: [usize; 4] = [1, 3, 5, 7];
const BARRIER_REFERENCES: [(usize, Spin); 5] =
    [(0, Spin::Down), (2, Spin::Up), (4, Spin::Down), (6, Spin::Up), (8, Spin::Down)];

/// Revival time of the resonant reduced model, `π/(3J)`.
pub fn reduced_revival_time(j: f64) -> f64 {
    PI / (3.0 * j)
}

/// Quoted form of the revival time, `ħ/(6J)` with `ħ = 1`.
pub fn quoted_revival_time(j: f64) -> f64 {
    1.0 / (6.0 * j)
}

pub fn chain(levels: ZeemanLevels, j: f64) -> Result<ChainSpec> {
    ChainSpec::new(j, parse_roles(ROLES)?, levels)
}

/// X and Y as qubits; W and Z frozen `|↑⟩` with the other barriers.
pub fn encoding_two_qubit() -> EncodingMap {
    let mut barriers: Vec<Barrier> =
        BARRIER_REFERENCES.iter().map(|&(site, reference)| Barrier { site, reference }).collect();
    barriers.push(Barrier { site: 1, reference: Spin::Up });
    barriers.push(Barrier { site: 7, reference: Spin::Up });
    barriers.sort_by_key(|b| b.site);
    EncodingMap::new(N_SITES, vec![vec![3], vec![5]], barriers).expect("static layout")
}

/// W, X, Y, Z as qubits.
pub fn encoding_four_qubit() -> EncodingMap {
    let barriers = BARRIER_REFERENCES.iter().map(|&(site, reference)| Barrier { site, reference }).collect();
    EncodingMap::new(N_SITES, QUBIT_SITES.iter().map(|&s| vec![s]).collect(), barriers).expect("static layout")
}

/// Passive pattern with the gate barrier tuned to `A + J`.
pub fn resonant_energies(levels: &ZeemanLevels, j: f64) -> Vec<f64> {
    let mut e: Vec<f64> = ROLES.chars().map(|c| if c == 'A' { levels.a } else { levels.b }).collect();
    e[GATE_BARRIER] = levels.a + j;
    e
}

/// Gate barrier at `A + J` for `t_gate`; an empty schedule when `t_gate = 0`.
pub fn arch1_two_qubit_schedule(levels: &ZeemanLevels, j: f64, t_gate: f64) -> (ZeemanSchedule, EncodingMap) {
    let mut s = ZeemanSchedule::new();
    s.push(t_gate, resonant_energies(levels, j));
    (s, encoding_two_qubit())
}

/// Revival of the gate barrier over the X–Y logical inputs.
pub fn find_gate_revival(levels: &ZeemanLevels, j: f64, cfg: &RevivalConfig) -> Result<Revival> {
    let ev = Evolver::new(N_SITES, j, Coupling::Heisenberg);
    let probe = BarrierProbe {
        evolver: &ev,
        energies: resonant_energies(levels, j),
        inputs: encoding_two_qubit().basis_states(),
        barrier_site: GATE_BARRIER,
        reference: Spin::Down,
    };
    probe.find((0.0, 4.0 / j), cfg)
}

/// Extracted X–Y gate after `t_gate`, compared with `Ĝ`.
pub fn g_gate_report(levels: &ZeemanLevels, j: f64, t_gate: f64) -> Result<(GateReport, ZPhaseFit)> {
    let chain = chain(*levels, j)?;
    let (sched, enc) = arch1_two_qubit_schedule(levels, j, t_gate);
    let ev = Evolver::for_chain(&chain, Coupling::Heisenberg);
    let cols = logical_columns(&ev, &sched, &enc, &chain.passive_energies())?;
    let mut report = extract_from_columns(&cols, &enc)?;
    report.revival_time = Some(t_gate);
    let fit = compare_to(&mut report, &g_gate())?;
    Ok((report, fit))
}

/// Revival search followed by extraction at the revival.
pub fn g_gate_pipeline(levels: &ZeemanLevels, j: f64) -> Result<(Revival, GateReport, ZPhaseFit)> {
    let rev = find_gate_revival(levels, j, &RevivalConfig::default())?;
    let (report, fit) = g_gate_report(levels, j, rev.t_r)?;
    Ok((rev, report, fit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{extract_gate, local_equivalence_invariants, LocalInvariants};
    use crate::linalg::ComplexMatrix;
    use crate::model::reduced_three_spin;
    use crate::evolve::Evolver;

    #[test]
    fn encodings_follow_reference_pattern() {
        let e4 = encoding_four_qubit();
        assert_eq!(
            e4.spins(0),
            vec![Spin::Down, Spin::Up, Spin::Up, Spin::Up, Spin::Down, Spin::Up, Spin::Up, Spin::Up, Spin::Down]
        );
        let e2 = encoding_two_qubit();
        assert_eq!(e2.spins(0), e4.spins(0));
        assert_eq!(e2.n_qubits(), 2);
    }

    #[test]
    fn zero_duration_is_identity() {
        let (s, _) = arch1_two_qubit_schedule(&ZeemanLevels::from_delta(1000.0, 1.0), 1.0, 0.0);
        assert!(s.is_empty());
        let u = ComplexMatrix::identity(1 << N_SITES);
        let r = extract_gate(&u, &encoding_two_qubit()).unwrap();
        assert_eq!(r.leakage, 0.0);
    }

    #[test]
    fn reduced_model_gate_is_g() {
        // three-site oracle: qubit, barrier ↓, qubit at exact resonance
        let j = 1.0;
        let h = reduced_three_spin(0.0, j, j);
        let u = crate::linalg::expm_i(&h, reduced_revival_time(j)).unwrap();
        let enc = EncodingMap::new(3, vec![vec![0], vec![2]], vec![Barrier { site: 1, reference: Spin::Down }]).unwrap();
        let mut r = extract_gate(&u, &enc).unwrap();
        assert!(r.leakage < 1e-12);
        // |00⟩ and |11⟩ pick up phases only
        let block = &r.logical_unitary;
        assert!((block[(0, 0)].norm() - 1.0).abs() < 1e-6 && (block[(3, 3)].norm() - 1.0).abs() < 1e-6);
        compare_to(&mut r, &g_gate()).unwrap();
        assert!(r.op_distance.unwrap() < 1e-7, "{:?}", r.op_distance);
        let inv = local_equivalence_invariants(&r.logical_unitary).unwrap();
        assert!(inv.distance(&local_equivalence_invariants(&g_gate()).unwrap()) < 1e-9);
        assert!(inv.distance(&LocalInvariants::identity_class()) > 0.1);
    }

    #[test]
    fn reduced_revival_is_two_pi_times_quoted() {
        let ev = Evolver::new(3, 1.0, Coupling::Heisenberg);
        let s = |a, b, c| crate::model::basis_index(&[a, b, c]);
        let probe = BarrierProbe {
            evolver: &ev,
            energies: vec![1.0, 1.0, 1.0],
            inputs: vec![
                s(Spin::Up, Spin::Down, Spin::Up),
                s(Spin::Up, Spin::Down, Spin::Down),
                s(Spin::Down, Spin::Down, Spin::Up),
                s(Spin::Down, Spin::Down, Spin::Down),
            ],
            barrier_site: 1,
            reference: Spin::Down,
        };
        let r = probe.find((0.0, 4.0), &RevivalConfig::default()).unwrap();
        assert!((r.t_r / quoted_revival_time(1.0) - 2.0 * PI).abs() < 1e-5);
    }

    #[test]
    fn nine_spin_gate_at_large_detuning() {
        let levels = ZeemanLevels::from_delta(1000.0, 1.0);
        let (rev, report, _) = g_gate_pipeline(&levels, 1.0).unwrap();
        assert!((rev.t_r - reduced_revival_time(1.0)).abs() < 1e-2);
        assert!(report.op_distance.unwrap() < 1e-3, "{report:?}");
        assert!(report.leakage < 1e-4);
    }
}

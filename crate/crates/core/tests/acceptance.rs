//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! `cargo test --test acceptance`

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use chainlab::analysis::{defect_sweep, ising_convergence, SweepSpec};
use chainlab::evolve::{Evolver, LinearRamp, StateVector, ZeemanSchedule};
use chainlab::gates::{
    align_z_phases, best_synthesis, local_equivalence_invariants, minimal_uses, synthesize_cnot, BarrierProbe,
    RevivalConfig, SynthesisConfig,
};
use chainlab::linalg::{op_distance, unitarity_defect, ComplexMatrix};
use chainlab::model::{Coupling, Spin, ZeemanLevels};
use chainlab::schemes::zeno::{collapse_frequency_scan, ZenoConfig, ZenoSetup};
use chainlab::schemes::{arch1, arch2, arch3};

type Outcome = chainlab::Result<(bool, String)>;
type Criterion = (&'static str, fn() -> Outcome);

const J: f64 = 1.0;

/// `Ĝ` with `W = ½e^{iπ/3}`.
fn g_hat() -> ComplexMatrix {
    let w = C::from_polar(0.5, PI / 3.0);
    let o = C::new(1.0, 0.0);
    let z = C::new(0.0, 0.0);
    let x = C::new(0.0, 3f64.sqrt()) * w;
    ComplexMatrix::from_rows(&[&[o, z, z, z], &[z, w, x, z], &[z, x, w, z], &[z, z, z, o]]).unwrap()
}

fn criterion_1() -> Outcome {
    let levels = ZeemanLevels::from_delta(1000.0, J);
    let (rev, report, _) = arch1::g_gate_pipeline(&levels, J)?;
    let target = g_hat();
    let fit = align_z_phases(&report.logical_unitary, &target)?;
    let inv = local_equivalence_invariants(&report.logical_unitary)?;
    let inv_target = local_equivalence_invariants(&target)?;
    let inv_dist = inv.distance(&inv_target);
    Ok((
        fit.distance < 1e-3 && inv_dist < 1e-6,
        format!("t_r = {:.9}, op_distance = {:.3e} (< 1e-3), invariant distance = {:.3e} (< 1e-6)", rev.t_r, fit.distance, inv_dist),
    ))
}

fn reduced_revival(levels: &ZeemanLevels) -> chainlab::Result<chainlab::gates::Revival> {
    let ev = Evolver::new(3, J, Coupling::Heisenberg);
    let s = |p: &str| common::index(p);
    let eps = levels.a + J;
    let probe = BarrierProbe {
        evolver: &ev,
        energies: vec![eps, eps, eps],
        inputs: vec![s("udu"), s("udd"), s("ddu"), s("ddd")],
        barrier_site: 1,
        reference: Spin::Down,
    };
    probe.find((0.0, 4.0 / J), &RevivalConfig::default())
}

fn criterion_2() -> Outcome {
    let quoted = arch1::quoted_revival_time(J);
    let deltas = [100.0, 1000.0];
    let reduced: Vec<_> = deltas
        .iter()
        .map(|&d| reduced_revival(&ZeemanLevels::from_delta(d, J)))
        .collect::<chainlab::Result<_>>()?;
    let p_min = reduced.iter().map(|r| r.p_revival).fold(1.0, f64::min);
    let drift = (reduced[0].t_r / reduced[1].t_r - 1.0).abs();
    // full chain, reported only: its revival shifts at order J/D
    let nine: Vec<f64> = deltas
        .iter()
        .map(|&d| arch1::find_gate_revival(&ZeemanLevels::from_delta(d, J), J, &RevivalConfig::default()).map(|r| r.t_r / quoted))
        .collect::<chainlab::Result<_>>()?;
    Ok((
        1.0 - p_min < 1e-4 && drift < 1e-3,
        format!(
            "reduced t_r = {:.9} (pi/3J = {:.9}), p = {:.8}, ratio to 1/(6J) = {:.6} (D=1e2) / {:.6} (D=1e3), drift {:.1e} (< 1e-3); nine-spin ratio {:.6} / {:.6}",
            reduced[1].t_r,
            PI / 3.0,
            p_min,
            reduced[0].t_r / quoted,
            reduced[1].t_r / quoted,
            drift,
            nine[0],
            nine[1]
        ),
    ))
}

fn criterion_3() -> Outcome {
    let levels = ZeemanLevels::from_delta(1000.0, J);
    let t_r = PI / (5f64.sqrt() * J);
    let gate = arch2::pair_gate(&levels, J, levels.two_qubit_resonance(J), t_r)?;
    let target = -PI / 5f64.sqrt();
    let err = chainlab::gates::wrap_angle(gate.corrections.phi - target).abs();
    let res = gate.corrections.off_diagonal_residual;
    Ok((
        err < 1e-3 && res < 1e-3,
        format!(
            "phi = {:.6} vs -pi/sqrt5 = {:.6}, |error| = {:.3e} (< 1e-3); off-diagonal residual = {:.3e} (< 1e-3)",
            gate.corrections.phi, target, err, res
        ),
    ))
}

fn criterion_4() -> Outcome {
    let cfg = SynthesisConfig::default();
    let g = synthesize_cnot(&g_hat(), 4, &cfg)?;
    let m_gate = chainlab::gates::controlled_phase(-PI / 5f64.sqrt());
    let m2 = best_synthesis(&m_gate, 2, &cfg)?;
    let g_ok = g.fidelity > 1.0 - 1e-6;
    if m2.fidelity > 1.0 - 1e-6 {
        return Ok((g_ok, format!("G x4: F = {:.12}; M x2: F = {:.12}", g.fidelity, m2.fidelity)));
    }
    let min = minimal_uses(&m_gate, 4, &cfg)?;
    Ok((
        g_ok && min.minimal.is_some(),
        format!(
            "G x4: F = {:.12}; M x2: best F = {:.9} (not reached), minimal succeeding uses = {:?}",
            g.fidelity, m2.fidelity, min.minimal
        ),
    ))
}

fn criterion_5() -> Outcome {
    let recs = defect_sweep(&SweepSpec::default())?;
    let full = recs.len() == 7;
    let monotone = recs.windows(2).all(|w| w[1].defect_worst <= w[0].defect_worst + 1e-6);
    let at = |d: f64| recs.iter().find(|r| r.delta == d).map(|r| r.defect_worst).unwrap_or(f64::NAN);
    let ratio_ok = at(100.0) < at(10.0) / 10.0;
    let phase_ok = recs.iter().all(|r| r.phase_noise_probability() <= r.defect_worst);
    let table: Vec<String> = recs.iter().map(|r| format!("{}:{:.2e}", r.delta, r.defect_worst)).collect();
    Ok((
        full && monotone && ratio_ok && phase_ok,
        format!(
            "defects [{}], monotone = {monotone}, d(100) < d(10)/10 = {ratio_ok}, phase <= defect = {phase_ok}",
            table.join(" ")
        ),
    ))
}

fn criterion_6() -> Outcome {
    let conv = ising_convergence(&[10.0, 20.0, 50.0, 100.0, 200.0, 500.0, 1000.0], J)?;
    Ok((
        (conv.leakage_slope + 2.0).abs() <= 0.3,
        format!("leakage slope = {:.4} (-2 +- 0.3), distance slope = {:.4}", conv.leakage_slope, conv.distance_slope),
    ))
}

fn criterion_7() -> Outcome {
    let delta = 1000.0;
    let chain = arch3::chain(4, ZeemanLevels::from_delta(delta, J), J)?;
    let setting = arch3::six_settings(J).into_iter().find(|s| s.label() == "(B, A+J)").expect("setting present");
    let report = arch3::setting_report(&setting, &chain)?;
    let g = arch3::single_qubit_gates(&report, 4)?;
    let odd = op_distance(&g[1], &g[3])?;
    let even: Vec<f64> = [0, 2]
        .iter()
        .map(|&q| align_z_phases(&g[q], &ComplexMatrix::identity(2)).map(|f| f.distance))
        .collect::<chainlab::Result<_>>()?;
    let bound = 10.0 * J / (delta * J);
    Ok((
        odd < 1e-6 && even.iter().all(|&d| d < bound),
        format!("odd gates differ by {odd:.3e} (< 1e-6); even identity distances {:.3e}, {:.3e} (< {bound:.0e})", even[0], even[1]),
    ))
}

fn criterion_8() -> Outcome {
    let setup = ZenoSetup::reduced_g_sequence(J, 20)?;
    let base = ZenoConfig { jitter_stddev: 0.05, trials: 10_000, ..ZenoConfig::default() };
    let stats = collapse_frequency_scan(&setup, &base, &[0, 4, 2, 1])?;
    let decreasing = stats.windows(2).all(|w| {
        let se = w[0].wrong_collapse_stderr.hypot(w[1].wrong_collapse_stderr);
        w[0].wrong_collapse_probability - w[1].wrong_collapse_probability > 3.0 * se
    });
    let (never, every) = (&stats[0], &stats[3]);
    let gain = every.mean_fidelity - never.mean_fidelity;
    let se = never.fidelity_stderr.hypot(every.fidelity_stderr);
    let p: Vec<String> = stats.iter().map(|s| format!("{:.4}", s.wrong_collapse_probability)).collect();
    Ok((
        decreasing && gain > 3.0 * se,
        format!(
            "P(wrong) never/4/2/1 = [{}], strictly decreasing (3 sigma) = {decreasing}; F(every) - F(never) = {gain:.4} (3 sigma = {:.4})",
            p.join(", "),
            3.0 * se
        ),
    ))
}

fn random_state(dim: usize, rng: &mut impl Rng) -> StateVector {
    let amps: Vec<C> = (0..dim).map(|_| C::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
    StateVector::normalized(amps).unwrap()
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let l3 = ZeemanLevels::from_delta(1000.0, J);
    let l2 = ZeemanLevels::from_delta(100.0, J);
    let mut corpus: Vec<(usize, ZeemanSchedule)> = vec![
        (9, arch1::arch1_two_qubit_schedule(&l3, J, arch1::reduced_revival_time(J)).0),
        (4, arch2::arch2_single_qubit_schedule(&l2, 0.0, PI / 4.0).0),
        (4, arch2::arch2_single_qubit_schedule(&l2, 3.0, 1.3).0),
        (6, arch2::arch2_two_qubit_schedule(&l3, J, arch2::pair_revival_time(J)).0),
    ];
    for s in arch3::six_settings(J) {
        corpus.push((6, arch3::arch3_apply(&s, &arch3::chain(2, l2, J)?)?));
    }
    let mut random = ZeemanSchedule::new();
    for _ in 0..5 {
        random.push(rng.random::<f64>(), (0..7).map(|_| 20.0 * rng.random::<f64>() - 10.0).collect());
    }
    corpus.push((7, random.with_linear_ramps(&[0.0; 7], LinearRamp { duration: 0.2, steps: 8 })?));
    corpus.push((7, random));

    let mut worst_u: f64 = 0.0;
    let mut worst_norm: f64 = 0.0;
    let mut worst_z: f64 = 0.0;
    for (n, sched) in &corpus {
        let ev = Evolver::new(*n, J, Coupling::Heisenberg);
        worst_u = worst_u.max(unitarity_defect(&ev.propagator(sched)?));
        for _ in 0..3 {
            let psi = random_state(1 << n, &mut rng);
            let out = ev.evolve(sched, &psi)?;
            worst_norm = worst_norm.max((out.norm() - 1.0).abs());
            worst_z = worst_z.max((out.total_z() - psi.total_z()).abs());
        }
    }
    // twelve spins: states only
    let chain12 = arch3::chain(4, l3, J)?;
    let ev12 = Evolver::for_chain(&chain12, Coupling::Heisenberg);
    for s in arch3::six_settings(J) {
        let psi = random_state(1 << 12, &mut rng);
        let out = ev12.evolve(&arch3::arch3_apply(&s, &chain12)?, &psi)?;
        worst_norm = worst_norm.max((out.norm() - 1.0).abs());
        worst_z = worst_z.max((out.total_z() - psi.total_z()).abs());
    }

    // frozen five-spin oracle against the reduced three-spin model
    let (a, b) = (l3.a, l3.b);
    let h5 = common::heisenberg(&[b, a, a + J, a, b], J);
    let ev3 = Evolver::new(3, J, Coupling::Heisenberg);
    let e3 = [a + J, a + J, a + J];
    let mut worst_overlap: f64 = 1.0;
    for input in ["udu", "udd", "ddu", "ddd"] {
        let i3 = common::index(input);
        let i5 = common::index(&format!("u{input}u"));
        for k in 0..=100 {
            let t = 5.0 / J * k as f64 / 100.0;
            let u5 = common::propagator(&h5, t);
            let mut psi3 = vec![C::new(0.0, 0.0); 8];
            psi3[i3] = C::new(1.0, 0.0);
            ev3.evolve_constant(&e3, t, &mut psi3)?;
            let ov: C = (0..8).map(|s| psi3[s].conj() * u5[(common::index("u") << 4 | s << 1, i5)]).sum();
            worst_overlap = worst_overlap.min(ov.norm_sqr());
        }
    }
    Ok((
        worst_u < 1e-9 && worst_norm < 1e-9 && worst_z < 1e-9 && worst_overlap > 1.0 - 1e-4,
        format!(
            "{} schedules: unitarity {:.2e}, norm {:.2e}, total Z {:.2e} (< 1e-9); five-spin overlap min {:.8} (> 1 - 1e-4)",
            corpus.len() + 6,
            worst_u,
            worst_norm,
            worst_z,
            worst_overlap
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("G reproduction", criterion_1),
        ("revival determination", criterion_2),
        ("M phase", criterion_3),
        ("CNOT synthesis", criterion_4),
        ("defect trend", criterion_5),
        ("Ising limit", criterion_6),
        ("six-setting isolation", criterion_7),
        ("Zeno suppression", criterion_8),
        ("conservation suite", criterion_9),
    ];
    let mut failures = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let (ok, detail) = match f() {
            Ok(x) => x,
            Err(e) => (false, format!("error: {e}")),
        };
        failures += usize::from(!ok);
        println!("{} criterion {} ({name}): {detail} [{:.1?}]", if ok { "PASS" } else { "FAIL" }, k + 1, t0.elapsed());
    }
    println!("acceptance: {} of 9 criteria pass", 9 - failures);
    if failures == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}

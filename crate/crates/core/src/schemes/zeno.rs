//! Barrier-collapse trajectories under gate-timing jitter.
//!
//! A trial runs a gate sequence whose durations are perturbed by Gaussian
//! jitter. At collapse points (between gates only) every barrier is measured
//! in the z basis with Born-rule sampling; outcomes are recorded, never fed
//! forward. Every trial ends with one collapse so all frequencies are scored
//! on the same footing.

use std::f64::consts::PI;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolve::{Evolver, Segment, StateVector};
use crate::gates::{Barrier, EncodingMap};
use crate::linalg::{C64, ZERO};
use crate::model::{spin_at, Coupling, Spin};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZenoConfig {
    /// Gates between collapses; `0` means no intermediate collapse.
    pub collapse_interval: usize,
    /// Relative stddev of each gate duration.
    pub jitter_stddev: f64,
    pub trials: usize,
    pub seed: u64,
    /// Fraction of the jitter variance shared by all gates of a trial.
    #[serde(default)]
    pub jitter_correlation: f64,
}

impl Default for ZenoConfig {
    fn default() -> Self {
        Self { collapse_interval: 1, jitter_stddev: 0.05, trials: 10_000, seed: 7, jitter_correlation: 0.0 }
    }
}

impl ZenoConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("zeno trials must be at least 1".into()));
        }
        if !(self.jitter_stddev >= 0.0 && self.jitter_stddev.is_finite()) {
            return Err(Error::Config(format!("jitter_stddev {} must be finite and >= 0", self.jitter_stddev)));
        }
        if !(0.0..=1.0).contains(&self.jitter_correlation) {
            return Err(Error::Config(format!("jitter_correlation {} not in [0, 1]", self.jitter_correlation)));
        }
        Ok(())
    }
}

/// Gate sequence, barrier layout and input state of a Zeno study.
pub struct ZenoSetup {
    pub evolver: Evolver,
    pub gates: Vec<Segment>,
    pub barriers: Vec<Barrier>,
    pub initial: StateVector,
}

impl ZenoSetup {
    pub fn new(evolver: Evolver, gates: Vec<Segment>, enc: &EncodingMap, initial: StateVector) -> Result<Self> {
        if initial.dim() != evolver.dim() || enc.n != evolver.n() {
            return Err(Error::DimensionMismatch { expected: evolver.dim(), found: initial.dim() });
        }
        for g in &gates {
            if g.energies.len() != evolver.n() {
                return Err(Error::LengthMismatch { expected: evolver.n(), found: g.energies.len() });
            }
        }
        Ok(Self { evolver, gates, barriers: enc.barriers.clone(), initial })
    }

    /// `n_gates` repetitions of the resonant three-spin `Ĝ` process with
    /// both qubits in `|+⟩` and the barrier `|↓⟩`.
    pub fn reduced_g_sequence(j: f64, n_gates: usize) -> Result<Self> {
        let enc = EncodingMap::new(3, vec![vec![0], vec![2]], vec![Barrier { site: 1, reference: Spin::Down }])?;
        let gate = Segment { duration: PI / (3.0 * j), energies: vec![j, j, j] };
        let mut amps = vec![ZERO; 8];
        for logical in 0..4 {
            amps[crate::model::basis_index(&enc.spins(logical))] = C64::new(0.5, 0.0);
        }
        Self::new(Evolver::new(3, j, Coupling::Heisenberg), vec![gate; n_gates], &enc, StateVector::new(amps)?)
    }

    /// Noiseless final state.
    pub fn ideal_final(&self) -> Result<StateVector> {
        let mut psi = self.initial.amplitudes().to_vec();
        for g in &self.gates {
            self.evolver.evolve_constant(&g.energies, g.duration, &mut psi)?;
        }
        Ok(StateVector::from_raw(psi))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZenoTrace {
    pub trial: usize,
    pub wrong_collapse: bool,
    pub fidelity: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZenoStats {
    pub collapse_interval: usize,
    pub jitter_stddev: f64,
    pub trials: usize,
    pub seed: u64,
    pub n_gates: usize,
    pub wrong_collapse_probability: f64,
    pub wrong_collapse_stderr: f64,
    pub mean_fidelity: f64,
    pub fidelity_stderr: f64,
    pub traces: Vec<ZenoTrace>,
}

impl ZenoStats {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("stats serialize")
    }

    /// Per-trial CSV with columns `trial, wrong_collapse, fidelity`.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        for t in &self.traces {
            w.serialize(t)?;
        }
        w.flush().map_err(|e| Error::io(path, e))
    }
}

/// Random streams of one trial: `(jitter, collapse)`.
fn trial_rngs(seed: u64, trial: usize) -> (ChaCha8Rng, ChaCha8Rng) {
    let mut jitter = ChaCha8Rng::seed_from_u64(seed);
    jitter.set_stream(2 * trial as u64);
    let mut collapse = ChaCha8Rng::seed_from_u64(seed);
    collapse.set_stream(2 * trial as u64 + 1);
    (jitter, collapse)
}

/// Projects every barrier in the z basis; returns whether any was found off
/// its reference.
fn collapse_barriers(psi: &mut [C64], barriers: &[Barrier], n: usize, rng: &mut impl Rng) -> bool {
    let mut wrong = false;
    for b in barriers {
        let p_ref: f64 =
            psi.iter().enumerate().filter(|(s, _)| spin_at(*s, b.site, n) == b.reference).map(|(_, z)| z.norm_sqr()).sum();
        let u: f64 = rng.random();
        let outcome = if u < p_ref { b.reference } else { b.reference.flipped() };
        wrong |= outcome != b.reference;
        let mut norm = 0.0;
        for (s, z) in psi.iter_mut().enumerate() {
            if spin_at(s, b.site, n) == outcome {
                norm += z.norm_sqr();
            } else {
                *z = ZERO;
            }
        }
        let inv = 1.0 / norm.sqrt();
        psi.iter_mut().for_each(|z| *z *= inv);
    }
    wrong
}

fn run_trial(setup: &ZenoSetup, cfg: &ZenoConfig, ideal: &StateVector, trial: usize) -> Result<ZenoTrace> {
    let (mut jrng, mut crng) = trial_rngs(cfg.seed, trial);
    let n = setup.evolver.n();
    let common: f64 = jrng.sample(StandardNormal);
    let (wc, wi) = (cfg.jitter_correlation.sqrt(), (1.0 - cfg.jitter_correlation).sqrt());
    let mut psi = setup.initial.amplitudes().to_vec();
    let mut wrong = false;
    let last = setup.gates.len().saturating_sub(1);
    for (g, seg) in setup.gates.iter().enumerate() {
        let own: f64 = jrng.sample(StandardNormal);
        let t = seg.duration * (1.0 + cfg.jitter_stddev * (wc * common + wi * own));
        setup.evolver.evolve_constant(&seg.energies, t, &mut psi)?;
        let due = cfg.collapse_interval > 0 && (g + 1) % cfg.collapse_interval == 0;
        if due || g == last {
            wrong |= collapse_barriers(&mut psi, &setup.barriers, n, &mut crng);
        }
    }
    if setup.gates.is_empty() {
        wrong |= collapse_barriers(&mut psi, &setup.barriers, n, &mut crng);
    }
    let fidelity = StateVector::from_raw(psi).fidelity(ideal);
    Ok(ZenoTrace { trial, wrong_collapse: wrong, fidelity })
}

fn mean_stderr(xs: impl Iterator<Item = f64> + Clone, n: usize) -> (f64, f64) {
    let m = xs.clone().sum::<f64>() / n as f64;
    if n < 2 {
        return (m, 0.0);
    }
    let var = xs.map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1) as f64;
    (m, (var / n as f64).sqrt())
}

/// Monte-Carlo over `cfg.trials` independent trajectories. Results depend
/// only on `(setup, cfg)`, not on thread scheduling.
pub fn zeno_run(setup: &ZenoSetup, cfg: &ZenoConfig) -> Result<ZenoStats> {
    cfg.validate()?;
    let ideal = setup.ideal_final()?;
    let traces: Vec<ZenoTrace> =
        (0..cfg.trials).into_par_iter().map(|t| run_trial(setup, cfg, &ideal, t)).collect::<Result<_>>()?;
    let n = traces.len();
    let (p_wrong, p_err) = mean_stderr(traces.iter().map(|t| f64::from(u8::from(t.wrong_collapse))), n);
    let (f, f_err) = mean_stderr(traces.iter().map(|t| t.fidelity), n);
    Ok(ZenoStats {
        collapse_interval: cfg.collapse_interval,
        jitter_stddev: cfg.jitter_stddev,
        trials: cfg.trials,
        seed: cfg.seed,
        n_gates: setup.gates.len(),
        wrong_collapse_probability: p_wrong,
        wrong_collapse_stderr: p_err,
        mean_fidelity: f,
        fidelity_stderr: f_err,
        traces,
    })
}

/// One run per collapse interval, sharing every other setting.
pub fn collapse_frequency_scan(setup: &ZenoSetup, base: &ZenoConfig, intervals: &[usize]) -> Result<Vec<ZenoStats>> {
    intervals.iter().map(|&k| zeno_run(setup, &ZenoConfig { collapse_interval: k, ..base.clone() })).collect()
}

//! Piecewise-constant Zeeman schedules and their propagation.
//!
//! Segments switch abruptly. Because every chain Hamiltonian conserves the
//! number of down spins, [`Evolver`] works sector by sector with cached real
//! eigensystems; the dense [`propagator`] is assembled from those blocks.

use std::collections::HashMap;
use std::sync::Arc;

use nalgebra::DMatrix;
use parking_lot::RwLock;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{symmetric_eig, ComplexMatrix, RealEigenSystem, C64, ZERO};
use crate::model::{down_count, sector_hamiltonian, sector_states, spin_at, zeeman_energy, ChainSpec, Coupling, Spin};

pub const NORM_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Segment {
    pub duration: f64,
    pub energies: Vec<f64>,
}

/// Ordered segments; later segments act after earlier ones.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZeemanSchedule {
    pub segments: Vec<Segment>,
}

/// Replaces each abrupt switch by a staircase of `steps` equal sub-segments.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearRamp {
    pub duration: f64,
    pub steps: usize,
}

impl ZeemanSchedule {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(duration: f64, energies: Vec<f64>) -> Self {
        Self { segments: vec![Segment { duration, energies }] }
    }

    /// Appends a segment; zero durations are dropped.
    pub fn then(mut self, duration: f64, energies: Vec<f64>) -> Self {
        self.push(duration, energies);
        self
    }

    pub fn push(&mut self, duration: f64, energies: Vec<f64>) {
        if duration != 0.0 {
            self.segments.push(Segment { duration, energies });
        }
    }

    pub fn extend(&mut self, other: &ZeemanSchedule) {
        self.segments.extend(other.segments.iter().cloned());
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn total_time(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        for (k, s) in self.segments.iter().enumerate() {
            if !(s.duration.is_finite() && s.duration > 0.0) {
                return Err(Error::InvalidSchedule(format!("segment {k} has duration {}", s.duration)));
            }
            if s.energies.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: s.energies.len() });
            }
            if s.energies.iter().any(|e| !e.is_finite()) {
                return Err(Error::InvalidSchedule(format!("segment {k} has a non-finite energy")));
            }
        }
        Ok(())
    }

    /// Staircase approximation of linear ramps into every segment, starting
    /// from `initial` energies. Adds `ramp.duration` per switch.
    pub fn with_linear_ramps(&self, initial: &[f64], ramp: LinearRamp) -> Result<ZeemanSchedule> {
        if ramp.steps == 0 || !(ramp.duration.is_finite() && ramp.duration > 0.0) {
            return Err(Error::InvalidSchedule("ramp needs positive duration and steps".into()));
        }
        let mut out = ZeemanSchedule::new();
        let mut prev = initial.to_vec();
        for seg in &self.segments {
            if prev.len() != seg.energies.len() {
                return Err(Error::LengthMismatch { expected: prev.len(), found: seg.energies.len() });
            }
            if prev != seg.energies {
                let dt = ramp.duration / ramp.steps as f64;
                for k in 0..ramp.steps {
                    let f = (k as f64 + 0.5) / ramp.steps as f64;
                    out.push(dt, prev.iter().zip(&seg.energies).map(|(a, b)| a + f * (b - a)).collect());
                }
            }
            out.push(seg.duration, seg.energies.clone());
            prev = seg.energies.clone();
        }
        Ok(out)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("schedule serializes")
    }
}

/// Normalized chain state.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let s = Self { amplitudes };
        let norm = s.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(s)
    }

    pub fn normalized(mut amplitudes: Vec<C64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::NotNormalized { norm });
        }
        amplitudes.iter_mut().for_each(|z| *z /= norm);
        Ok(Self { amplitudes })
    }

    pub fn basis(n: usize, index: usize) -> Self {
        let mut amplitudes = vec![ZERO; 1 << n];
        amplitudes[index] = C64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn product(spins: &[Spin]) -> Self {
        Self::basis(spins.len(), crate::model::basis_index(spins))
    }

    pub(crate) fn from_raw(amplitudes: Vec<C64>) -> Self {
        Self { amplitudes }
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn n_sites(&self) -> usize {
        self.amplitudes.len().trailing_zeros() as usize
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amplitudes[index].norm_sqr()
    }

    /// Probability that `site` is found in `spin`.
    pub fn site_population(&self, site: usize, spin: Spin) -> f64 {
        let n = self.n_sites();
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(s, _)| spin_at(*s, site, n) == spin)
            .map(|(_, z)| z.norm_sqr())
            .sum()
    }

    /// `⟨Σᵢ σᵢ^Z⟩`.
    pub fn total_z(&self) -> f64 {
        let n = self.n_sites() as f64;
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(s, z)| z.norm_sqr() * (n - 2.0 * down_count(s) as f64))
            .sum()
    }
}

type SectorCache = HashMap<(Vec<u64>, usize), Arc<RealEigenSystem>>;

/// Sector-resolved propagation for a fixed `(n, J, coupling)`.
///
/// Eigensystems are built lazily per (energy vector, sector) and cached; the
/// cache tolerates concurrent readers.
pub struct Evolver {
    n: usize,
    j: f64,
    coupling: Coupling,
    sectors: Vec<Vec<usize>>,
    position: Vec<usize>,
    cache: RwLock<SectorCache>,
}

impl Evolver {
    pub fn new(n: usize, j: f64, coupling: Coupling) -> Self {
        let sectors: Vec<Vec<usize>> = (0..=n).map(|k| sector_states(n, k)).collect();
        let mut position = vec![0; 1 << n];
        for states in &sectors {
            for (p, &s) in states.iter().enumerate() {
                position[s] = p;
            }
        }
        Self { n, j, coupling, sectors, position, cache: RwLock::new(HashMap::new()) }
    }

    pub fn for_chain(chain: &ChainSpec, coupling: Coupling) -> Self {
        Self::new(chain.n, chain.j, coupling)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Number of cached (energy vector, sector) eigensystems.
    pub fn cached_blocks(&self) -> usize {
        self.cache.read().len()
    }

    fn eigensystem(&self, energies: &[f64], sector: usize) -> Arc<RealEigenSystem> {
        let key = (energies.iter().map(|e| e.to_bits()).collect::<Vec<u64>>(), sector);
        if let Some(hit) = self.cache.read().get(&key) {
            return Arc::clone(hit);
        }
        let states = &self.sectors[sector];
        let h = sector_hamiltonian(self.n, self.j, energies, self.coupling, states);
        let es = Arc::new(symmetric_eig(states.len(), &h));
        Arc::clone(self.cache.write().entry(key).or_insert(es))
    }

    fn check_state(&self, psi: &[C64]) -> Result<()> {
        if psi.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: psi.len() });
        }
        Ok(())
    }

    /// Applies `e^{-iHt}` for constant energies. Negative `t` is evolution
    /// under `-H`.
    pub fn evolve_constant(&self, energies: &[f64], t: f64, psi: &mut [C64]) -> Result<()> {
        if energies.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: energies.len() });
        }
        self.check_state(psi)?;
        for (k, states) in self.sectors.iter().enumerate() {
            let local: Vec<C64> = states.iter().map(|&s| psi[s]).collect();
            if local.iter().all(|z| *z == ZERO) {
                continue;
            }
            let es = self.eigensystem(energies, k);
            for (&s, z) in states.iter().zip(es.evolve(t, &local)) {
                psi[s] = z;
            }
        }
        Ok(())
    }

    pub fn evolve_amplitudes(&self, schedule: &ZeemanSchedule, psi: &mut [C64]) -> Result<()> {
        schedule.validate(self.n)?;
        for seg in &schedule.segments {
            self.evolve_constant(&seg.energies, seg.duration, psi)?;
        }
        Ok(())
    }

    pub fn evolve(&self, schedule: &ZeemanSchedule, psi0: &StateVector) -> Result<StateVector> {
        let mut amps = psi0.amplitudes.clone();
        self.evolve_amplitudes(schedule, &mut amps)?;
        Ok(StateVector::from_raw(amps))
    }

    /// Runs the schedule backwards with every Hamiltonian negated.
    pub fn evolve_time_reversed(&self, schedule: &ZeemanSchedule, psi: &mut [C64]) -> Result<()> {
        schedule.validate(self.n)?;
        for seg in schedule.segments.iter().rev() {
            self.evolve_constant(&seg.energies, -seg.duration, psi)?;
        }
        Ok(())
    }

    /// Images of the given basis states: column `k` is `U|inputs[k]⟩`.
    pub fn evolve_basis_states(&self, schedule: &ZeemanSchedule, inputs: &[usize]) -> Result<Vec<Vec<C64>>> {
        schedule.validate(self.n)?;
        if let Some(&bad) = inputs.iter().find(|&&s| s >= self.dim()) {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: bad + 1 });
        }
        inputs
            .par_iter()
            .map(|&s| {
                let mut psi = vec![ZERO; self.dim()];
                psi[s] = C64::new(1.0, 0.0);
                self.evolve_amplitudes(schedule, &mut psi)?;
                Ok(psi)
            })
            .collect()
    }

    /// Dense propagator `U_k ⋯ U_1`, assembled from sector blocks.
    pub fn propagator(&self, schedule: &ZeemanSchedule) -> Result<ComplexMatrix> {
        if schedule.is_empty() {
            return Err(Error::InvalidSchedule("schedule has no segments".into()));
        }
        schedule.validate(self.n)?;
        let mut blocks: Vec<DMatrix<C64>> = self
            .sectors
            .iter()
            .map(|s| DMatrix::identity(s.len(), s.len()))
            .collect();
        for seg in &schedule.segments {
            for (k, acc) in blocks.iter_mut().enumerate() {
                let (re, im) = self.eigensystem(&seg.energies, k).propagator_parts(seg.duration);
                let u = re.zip_map(&im, C64::new);
                *acc = u * &*acc;
            }
        }
        let mut out = ComplexMatrix::zeros(self.dim());
        for (states, block) in self.sectors.iter().zip(&blocks) {
            for (r, &sr) in states.iter().enumerate() {
                for (c, &sc) in states.iter().enumerate() {
                    out[(sr, sc)] = block[(r, c)];
                }
            }
        }
        Ok(out)
    }

    /// Index of `state` inside its magnetization sector.
    pub fn sector_position(&self, state: usize) -> usize {
        self.position[state]
    }
}

/// Dense propagator of `schedule` under the full Heisenberg chain.
pub fn propagator(chain: &ChainSpec, schedule: &ZeemanSchedule) -> Result<ComplexMatrix> {
    Evolver::for_chain(chain, Coupling::Heisenberg).propagator(schedule)
}

/// `U|ψ₀⟩` under the full Heisenberg chain.
pub fn evolve(chain: &ChainSpec, schedule: &ZeemanSchedule, psi0: &StateVector) -> Result<StateVector> {
    if psi0.dim() != chain.dim() {
        return Err(Error::DimensionMismatch { expected: chain.dim(), found: psi0.dim() });
    }
    Evolver::for_chain(chain, Coupling::Heisenberg).evolve(schedule, psi0)
}

/// Phases `e^{+it Σ Eᵢ zᵢ}` of `R†(t)` on each basis state.
pub fn frame_phases(energies_passive: &[f64], t_total: f64) -> Vec<C64> {
    (0..1usize << energies_passive.len())
        .map(|s| C64::from_polar(1.0, t_total * zeeman_energy(s, energies_passive)))
        .collect()
}

/// `R†(t)·U` with `R(t) = exp(-it Σ Eᵢ σᵢ^Z)` at the passive energies.
pub fn rotating_frame_strip(u: &ComplexMatrix, energies_passive: &[f64], t_total: f64) -> Result<ComplexMatrix> {
    let dim = 1usize << energies_passive.len();
    if u.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: u.dim() });
    }
    let ph = frame_phases(energies_passive, t_total);
    Ok(ComplexMatrix::from_fn(dim, |i, j| ph[i] * u[(i, j)]))
}

/// `R†(t)|ψ⟩`, the state analogue of [`rotating_frame_strip`].
pub fn strip_state(psi: &[C64], energies_passive: &[f64], t_total: f64) -> Result<Vec<C64>> {
    let dim = 1usize << energies_passive.len();
    if psi.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: psi.len() });
    }
    let ph = frame_phases(energies_passive, t_total);
    Ok(psi.iter().zip(&ph).map(|(a, p)| a * p).collect())
}

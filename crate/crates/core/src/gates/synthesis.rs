use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ideal::{cnot, euler_zyz};
use super::optim::minimize;
use crate::error::{Error, Result};
use crate::linalg::{unitarity_defect, ComplexMatrix, C64};

pub const SUCCESS_FIDELITY: f64 = 1.0 - 1e-6;
pub const MIN_FIDELITY: f64 = 0.999;
pub const MAX_USES: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynthesisConfig {
    pub starts: usize,
    pub seed: u64,
    pub max_iters: u64,
    pub restarts: usize,
}

impl Default for SynthesisConfig {
    fn default() -> Self {
        Self { starts: 64, seed: 2024, max_iters: 6000, restarts: 12 }
    }
}

/// Best local dressing found for `n_uses` applications of an entangler.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynthesisResult {
    pub n_uses: usize,
    pub fidelity: f64,
    pub success: bool,
    /// Euler angles `(a, b, c)` for qubit 0 then qubit 1, layer by layer.
    pub params: Vec<f64>,
    pub best_start: usize,
}

impl SynthesisResult {
    /// Single-qubit layers `L₀ … L_n` as `(qubit 0, qubit 1)` pairs.
    pub fn layers(&self) -> Vec<(ComplexMatrix, ComplexMatrix)> {
        layers(&self.params)
    }

    /// `L_n·E·L_{n-1} ⋯ E·L₀`.
    pub fn circuit(&self, entangler: &ComplexMatrix) -> ComplexMatrix {
        circuit(entangler, &self.params)
    }
}

fn layers(params: &[f64]) -> Vec<(ComplexMatrix, ComplexMatrix)> {
    params
        .chunks(6)
        .map(|p| (euler_zyz(p[0], p[1], p[2]), euler_zyz(p[3], p[4], p[5])))
        .collect()
}

fn circuit(entangler: &ComplexMatrix, params: &[f64]) -> ComplexMatrix {
    let mut u = ComplexMatrix::identity(4);
    for (k, (a, b)) in layers(params).iter().enumerate() {
        if k > 0 {
            u = entangler * &u;
        }
        u = &a.kron(b) * &u;
    }
    u
}

/// `|tr(CNOT†·U)|²/16`.
pub fn cnot_fidelity(u: &ComplexMatrix) -> f64 {
    let t: C64 = cnot().adjoint().matmul(u).expect("4x4").trace();
    t.norm_sqr() / 16.0
}

fn single_start(entangler: &ComplexMatrix, n_uses: usize, cfg: &SynthesisConfig, start: usize) -> Result<(Vec<f64>, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (start as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let x0: Vec<f64> = (0..6 * (n_uses + 1)).map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)).collect();
    let cost = |x: &[f64]| 1.0 - cnot_fidelity(&circuit(entangler, x));
    minimize(&cost, x0, 0.4, cfg.max_iters, cfg.restarts, 1e-13)
}

/// Maximizes CNOT fidelity over single-qubit layers around `n_uses`
/// applications of `entangler`. Starts run in parallel; the reduction picks
/// the lowest start index among equal fidelities, so the result does not
/// depend on the worker count.
pub fn synthesize_cnot(entangler: &ComplexMatrix, n_uses: usize, cfg: &SynthesisConfig) -> Result<SynthesisResult> {
    let result = best_synthesis(entangler, n_uses, cfg)?;
    if result.fidelity < MIN_FIDELITY {
        return Err(Error::SynthesisFailed { n_uses, best_fidelity: result.fidelity, required: MIN_FIDELITY });
    }
    Ok(result)
}

/// Like [`synthesize_cnot`] but returns the best attempt even when it fails.
pub fn best_synthesis(entangler: &ComplexMatrix, n_uses: usize, cfg: &SynthesisConfig) -> Result<SynthesisResult> {
    if entangler.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: entangler.dim() });
    }
    let defect = unitarity_defect(entangler);
    if defect > 1e-6 {
        return Err(Error::NotUnitary { defect });
    }
    if !(1..=MAX_USES).contains(&n_uses) || cfg.starts == 0 {
        return Err(Error::Config(format!("n_uses must be in 1..={MAX_USES} with at least one start")));
    }
    let runs: Vec<(usize, Vec<f64>, f64)> = (0..cfg.starts)
        .into_par_iter()
        .map(|s| single_start(entangler, n_uses, cfg, s).map(|(x, c)| (s, x, c)))
        .collect::<Result<_>>()?;
    let (best_start, params, cost) = runs
        .into_iter()
        .min_by(|a, b| a.2.total_cmp(&b.2).then(a.0.cmp(&b.0)))
        .expect("at least one start");
    let fidelity = 1.0 - cost;
    Ok(SynthesisResult { n_uses, fidelity, success: fidelity > SUCCESS_FIDELITY, params, best_start })
}

/// Attempts for `1..=max_uses` until one succeeds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimalUses {
    pub minimal: Option<usize>,
    pub attempts: Vec<SynthesisResult>,
}

pub fn minimal_uses(entangler: &ComplexMatrix, max_uses: usize, cfg: &SynthesisConfig) -> Result<MinimalUses> {
    let mut attempts = Vec::new();
    for n in 1..=max_uses.min(MAX_USES) {
        let r = best_synthesis(entangler, n, cfg)?;
        let ok = r.success;
        attempts.push(r);
        if ok {
            return Ok(MinimalUses { minimal: Some(n), attempts });
        }
    }
    Ok(MinimalUses { minimal: None, attempts })
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolve::Evolver;
use crate::linalg::{golden_section_min, C64, ZERO};
use crate::model::Spin;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RevivalConfig {
    pub grid_points: usize,
    pub threshold: f64,
    /// Absolute time tolerance of the golden-section refinement.
    pub time_tol: f64,
}

impl Default for RevivalConfig {
    fn default() -> Self {
        Self { grid_points: 800, threshold: 0.999, time_tol: 1e-7 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Revival {
    pub t_r: f64,
    pub p_revival: f64,
}

/// First revival of `p(t)` in `window` after it has left the threshold.
///
/// The grid is scanned for the first departure below `threshold`, then for
/// the first local maximum at or above it, which is refined by golden section.
pub fn find_revival(p: impl Fn(f64) -> Result<f64>, window: (f64, f64), cfg: &RevivalConfig) -> Result<Revival> {
    let (t0, t1) = window;
    if !(t0.is_finite() && t1.is_finite() && t1 > t0) || cfg.grid_points < 3 {
        return Err(Error::InvalidSchedule(format!("bad revival window [{t0}, {t1}]")));
    }
    let dt = (t1 - t0) / (cfg.grid_points - 1) as f64;
    let ts: Vec<f64> = (0..cfg.grid_points).map(|k| t0 + k as f64 * dt).collect();
    let ps: Vec<f64> = ts.iter().map(|&t| p(t)).collect::<Result<_>>()?;
    let not_found = |best: f64| Error::NoRevivalFound { threshold: cfg.threshold, start: t0, end: t1, best };
    let Some(departed) = ps.iter().position(|&x| x < cfg.threshold) else {
        return Err(not_found(f64::NAN));
    };
    let peak = (departed.max(1)..cfg.grid_points - 1)
        .find(|&k| ps[k] >= cfg.threshold && ps[k] >= ps[k - 1] && ps[k] >= ps[k + 1]);
    let Some(k) = peak else {
        return Err(not_found(ps[departed..].iter().copied().fold(0.0, f64::max)));
    };
    // p is a probability; NaN from a failed evaluation compares as worst
    let neg = |t: f64| p(t).map(|x| -x).unwrap_or(f64::INFINITY);
    let (t_r, neg_p) = golden_section_min(neg, ts[k - 1], ts[k + 1], cfg.time_tol);
    let (t_r, p_revival) = if -neg_p >= ps[k] { (t_r, -neg_p) } else { (ts[k], ps[k]) };
    Ok(Revival { t_r, p_revival })
}

/// `p(t)`: min over `inputs` of the population of `barrier_site` in
/// `reference` after evolving for `t` at constant `energies`.
pub struct BarrierProbe<'a> {
    pub evolver: &'a Evolver,
    pub energies: Vec<f64>,
    pub inputs: Vec<usize>,
    pub barrier_site: usize,
    pub reference: Spin,
}

impl BarrierProbe<'_> {
    pub fn population(&self, t: f64) -> Result<f64> {
        let n = self.evolver.n();
        let mut worst: f64 = 1.0;
        for &s in &self.inputs {
            let mut psi = vec![ZERO; 1 << n];
            psi[s] = C64::new(1.0, 0.0);
            self.evolver.evolve_constant(&self.energies, t, &mut psi)?;
            let pop: f64 = psi
                .iter()
                .enumerate()
                .filter(|(idx, _)| crate::model::spin_at(*idx, self.barrier_site, n) == self.reference)
                .map(|(_, z)| z.norm_sqr())
                .sum();
            worst = worst.min(pop);
        }
        Ok(worst)
    }

    pub fn find(&self, window: (f64, f64), cfg: &RevivalConfig) -> Result<Revival> {
        find_revival(|t| self.population(t), window, cfg)
    }
}

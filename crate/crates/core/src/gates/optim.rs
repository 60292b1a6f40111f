use argmin::core::{CostFunction, Error as ArgminError, Executor, State};
use argmin::solver::neldermead::NelderMead;

use crate::error::{Error, Result};

struct Objective<'a, F>(&'a F);

impl<F: Fn(&[f64]) -> f64> CostFunction for Objective<'_, F> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, p: &Vec<f64>) -> std::result::Result<f64, ArgminError> {
        Ok((self.0)(p))
    }
}

/// Nelder-Mead from an axis-aligned simplex of edge `step`, restarted from the
/// best vertex until a restart gains less than `tol`.
pub(crate) fn minimize<F: Fn(&[f64]) -> f64>(
    f: &F,
    x0: Vec<f64>,
    step: f64,
    max_iters: u64,
    restarts: usize,
    tol: f64,
) -> Result<(Vec<f64>, f64)> {
    let mut best = (x0.clone(), f(&x0));
    for _ in 0..=restarts {
        let mut simplex = vec![best.0.clone()];
        for k in 0..best.0.len() {
            let mut v = best.0.clone();
            v[k] += step;
            simplex.push(v);
        }
        let solver = NelderMead::new(simplex)
            .with_sd_tolerance(1e-15)
            .map_err(|e| Error::Optimizer(e.to_string()))?;
        let res = Executor::new(Objective(f), solver)
            .configure(|s| s.max_iters(max_iters))
            .run()
            .map_err(|e| Error::Optimizer(e.to_string()))?;
        let state = res.state();
        let x = state.get_best_param().cloned().unwrap_or_else(|| best.0.clone());
        let fx = state.get_best_cost();
        let gain = best.1 - fx;
        if fx < best.1 {
            best = (x, fx);
        }
        if gain < tol {
            break;
        }
    }
    Ok(best)
}

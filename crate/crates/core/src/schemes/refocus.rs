//! Echo refocusing of the always-on coupling between adjacent qubits.
//!
//! One cycle of period `τ` is `X₀ · F(τ/2) · X₀ · F(τ/2)` with instantaneous
//! exact `σ^X` pulses on site 0 and free evolution `F` at the passive
//! energies. The residual is the distance of the cycle's local invariants
//! from the identity class.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolve::{Evolver, ZeemanSchedule};
use crate::gates::{local_equivalence_invariants, LocalInvariants};
use crate::linalg::{pauli_x, ComplexMatrix};
use crate::model::{ChainSpec, Coupling};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RefocusPoint {
    pub pulse_period: f64,
    pub cycles: usize,
    pub total_time: f64,
    pub residual: f64,
}

fn check_pair(chain: &ChainSpec) -> Result<()> {
    if chain.n != 2 {
        return Err(Error::InvalidChain(format!("refocusing acts on an adjacent pair, got {} spins", chain.n)));
    }
    Ok(())
}

fn free(ev: &Evolver, chain: &ChainSpec, t: f64) -> Result<ComplexMatrix> {
    ev.propagator(&ZeemanSchedule::single(t, chain.passive_energies()))
}

/// Propagator of one echo cycle of period `tau`.
pub fn echo_cycle(chain: &ChainSpec, tau: f64) -> Result<ComplexMatrix> {
    check_pair(chain)?;
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::InvalidSchedule(format!("pulse period {tau} must be positive")));
    }
    let ev = Evolver::for_chain(chain, Coupling::Heisenberg);
    let half = free(&ev, chain, tau / 2.0)?;
    let x0 = pauli_x().kron(&ComplexMatrix::identity(2));
    Ok(&(&(&x0 * &half) * &x0) * &half)
}

/// Residual entangling power: invariant distance from the identity class.
pub fn entangling_residual(u: &ComplexMatrix) -> Result<f64> {
    Ok(local_equivalence_invariants(u)?.distance(&LocalInvariants::identity_class()))
}

/// `cycles` echo cycles filling `total_time`.
pub fn refocus_cycles(chain: &ChainSpec, total_time: f64, cycles: usize) -> Result<RefocusPoint> {
    if cycles == 0 {
        return Err(Error::InvalidSchedule("at least one echo cycle".into()));
    }
    let tau = total_time / cycles as f64;
    let cycle = echo_cycle(chain, tau)?;
    let mut u = ComplexMatrix::identity(4);
    for _ in 0..cycles {
        u = &cycle * &u;
    }
    Ok(RefocusPoint { pulse_period: tau, cycles, total_time, residual: entangling_residual(&u)? })
}

/// Residual after one cycle for each pulse period.
pub fn refocus_demo(chain: &ChainSpec, pulse_periods: &[f64]) -> Result<Vec<RefocusPoint>> {
    pulse_periods.iter().map(|&tau| refocus_cycles(chain, tau, 1)).collect()
}

/// Free evolution for `t` without pulses.
pub fn unrefocused(chain: &ChainSpec, t: f64) -> Result<ComplexMatrix> {
    check_pair(chain)?;
    free(&Evolver::for_chain(chain, Coupling::Heisenberg), chain, t)
}

//! Simulation of Zeeman-tuned always-on Heisenberg spin chains.
//!
//! Start with [`model`] for Hamiltonians, [`evolve`] for schedules and
//! propagation, [`gates`] for extraction and verification, and [`schemes`]
//! for the concrete chain layouts.

pub mod error;
pub mod linalg;
pub mod model;
pub mod evolve;
pub mod gates;
pub mod schemes;
pub mod analysis;
pub mod cli;

pub use error::{Error, Result};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Spin;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Barrier {
    pub site: usize,
    pub reference: Spin,
}

/// Logical qubits on physical sites, with every other site frozen as a
/// barrier in a reference state.
///
/// One-site qubits use `|0⟩ = |↑⟩`, `|1⟩ = |↓⟩`. Two-site qubits use
/// `|0⟩_L = |↓↑⟩`, `|1⟩_L = |↑↓⟩`. Qubit 0 is the most significant logical bit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodingMap {
    pub n: usize,
    pub qubit_sites: Vec<Vec<usize>>,
    pub barriers: Vec<Barrier>,
}

impl EncodingMap {
    pub fn new(n: usize, qubit_sites: Vec<Vec<usize>>, barriers: Vec<Barrier>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut mark = |site: usize| -> Result<()> {
            if site >= n {
                return Err(Error::SiteOutOfRange { site, n });
            }
            if std::mem::replace(&mut seen[site], true) {
                return Err(Error::InvalidEncoding(format!("site {site} used twice")));
            }
            Ok(())
        };
        for q in &qubit_sites {
            if !(1..=2).contains(&q.len()) {
                return Err(Error::InvalidEncoding(format!("qubit on {} sites", q.len())));
            }
            q.iter().try_for_each(|&s| mark(s))?;
        }
        barriers.iter().try_for_each(|b| mark(b.site))?;
        if let Some(free) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidEncoding(format!("site {free} is neither qubit nor barrier")));
        }
        if qubit_sites.is_empty() {
            return Err(Error::InvalidEncoding("no qubits".into()));
        }
        Ok(Self { n, qubit_sites, barriers })
    }

    pub fn n_qubits(&self) -> usize {
        self.qubit_sites.len()
    }

    pub fn logical_dim(&self) -> usize {
        1 << self.n_qubits()
    }

    fn qubit_spins(sites: usize, bit: usize) -> &'static [Spin] {
        match (sites, bit) {
            (1, 0) => &[Spin::Up],
            (1, _) => &[Spin::Down],
            (_, 0) => &[Spin::Down, Spin::Up],
            _ => &[Spin::Up, Spin::Down],
        }
    }

    /// Physical spin configuration of logical basis state `logical`.
    pub fn spins(&self, logical: usize) -> Vec<Spin> {
        let nq = self.n_qubits();
        let mut spins = vec![Spin::Up; self.n];
        for b in &self.barriers {
            spins[b.site] = b.reference;
        }
        for (q, sites) in self.qubit_sites.iter().enumerate() {
            let bit = (logical >> (nq - 1 - q)) & 1;
            for (&s, &spin) in sites.iter().zip(Self::qubit_spins(sites.len(), bit)) {
                spins[s] = spin;
            }
        }
        spins
    }

    /// Physical basis index of logical basis state `logical`.
    pub fn physical_index(&self, logical: usize) -> usize {
        crate::model::basis_index(&self.spins(logical))
    }

    /// Physical indices of all logical basis states, in logical order.
    pub fn basis_states(&self) -> Vec<usize> {
        (0..self.logical_dim()).map(|l| self.physical_index(l)).collect()
    }

    /// Checks that every logical basis state has exactly one `|↓⟩` in each group.
    pub fn check_one_down_per_group(&self, groups: &[Vec<usize>]) -> Result<()> {
        for l in 0..self.logical_dim() {
            let spins = self.spins(l);
            for g in groups {
                let downs = g.iter().filter(|&&s| s < self.n && spins[s] == Spin::Down).count();
                if downs != 1 {
                    return Err(Error::InvalidEncoding(format!(
                        "logical state {l} has {downs} down spins on sites {g:?}"
                    )));
                }
            }
        }
        Ok(())
    }
}

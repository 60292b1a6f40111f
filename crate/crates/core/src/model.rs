//! Chain Hamiltonians.
//!
//! Basis convention, fixed crate-wide: logical `|0⟩` is physical `|↑⟩`
//! (σ^Z = +1, bit 0) and `|1⟩` is `|↓⟩` (bit 1). Site 0 is the leftmost spin
//! and maps to the most significant bit of a basis index.
//!
//! Every Hamiltonian built here is real symmetric and conserves the number
//! of down spins, so besides the dense builders the module exposes the
//! per-sector blocks used by [`crate::evolve`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{pauli_x, pauli_y, pauli_z, ComplexMatrix, C64};

pub const MIN_SPINS: usize = 2;
pub const MAX_SPINS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn bit(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }

    pub fn z(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }

    pub fn flipped(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }
}

/// Passive Zeeman role of a site.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    A,
    B,
    C,
}

impl Role {
    fn from_char(c: char) -> Option<Role> {
        match c {
            'A' => Some(Role::A),
            'B' => Some(Role::B),
            'C' => Some(Role::C),
            _ => None,
        }
    }

    fn as_char(self) -> char {
        match self {
            Role::A => 'A',
            Role::B => 'B',
            Role::C => 'C',
        }
    }
}

pub fn parse_roles(s: &str) -> Result<Vec<Role>> {
    s.chars()
        .map(|c| Role::from_char(c).ok_or_else(|| Error::InvalidChain(format!("unknown role {c:?} in {s:?}"))))
        .collect()
}

pub fn roles_to_string(roles: &[Role]) -> String {
    roles.iter().map(|r| r.as_char()).collect()
}

/// Fixed Zeeman levels of the passive pattern.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeemanLevels {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C")]
    pub c: f64,
}

impl ZeemanLevels {
    /// Levels with `(B - A)/J = (C - B)/J = delta`, `A = 0`.
    pub fn from_delta(delta: f64, j: f64) -> Self {
        Self::with_separations(delta, delta, j)
    }

    /// Independent separations `(B - A)/J` and `(C - B)/J`, `A = 0`.
    pub fn with_separations(delta_ab: f64, delta_bc: f64, j: f64) -> Self {
        let b = delta_ab * j;
        Self { a: 0.0, b, c: b + delta_bc * j }
    }

    pub fn energy(&self, role: Role) -> f64 {
        match role {
            Role::A => self.a,
            Role::B => self.b,
            Role::C => self.c,
        }
    }

    /// `(B - A)/J`.
    pub fn delta(&self, j: f64) -> f64 {
        (self.b - self.a) / j
    }

    /// Tuning at which a B-site spreads onto its `|↑⟩` C-barrier and revives
    /// for either state of the qubit beyond the barrier: `C - J`.
    ///
    /// With the barrier reference `|↑⟩` the tuned spin sees `+J` from its
    /// `|↑⟩` partner and the barrier sees `±J` from the next qubit; the two
    /// branches are detuned by `∓2J` at this point and share the revival
    /// time `π/(√5 J)`.
    pub fn two_qubit_resonance(&self, j: f64) -> f64 {
        self.c - j
    }

    pub fn validate(&self) -> Result<()> {
        if ![self.a, self.b, self.c].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidChain("Zeeman levels must be finite".into()));
        }
        if !(self.a < self.b && self.b < self.c) {
            return Err(Error::InvalidChain(format!(
                "levels must satisfy A < B < C, got {:?}",
                (self.a, self.b, self.c)
            )));
        }
        Ok(())
    }
}

/// A finite chain: size, coupling and passive Zeeman pattern.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ChainSpecDoc", into = "ChainSpecDoc")]
pub struct ChainSpec {
    pub n: usize,
    pub j: f64,
    pub roles: Vec<Role>,
    pub levels: ZeemanLevels,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainSpecDoc {
    n: usize,
    #[serde(rename = "J")]
    j: f64,
    roles: String,
    levels: ZeemanLevels,
}

impl TryFrom<ChainSpecDoc> for ChainSpec {
    type Error = Error;

    fn try_from(doc: ChainSpecDoc) -> Result<Self> {
        ChainSpec::new(doc.j, parse_roles(&doc.roles)?, doc.levels).and_then(|c| {
            if c.n != doc.n {
                Err(Error::InvalidChain(format!("n = {} but roles has {} sites", doc.n, c.n)))
            } else {
                Ok(c)
            }
        })
    }
}

impl From<ChainSpec> for ChainSpecDoc {
    fn from(c: ChainSpec) -> Self {
        ChainSpecDoc { n: c.n, j: c.j, roles: roles_to_string(&c.roles), levels: c.levels }
    }
}

impl ChainSpec {
    pub fn new(j: f64, roles: Vec<Role>, levels: ZeemanLevels) -> Result<Self> {
        let n = roles.len();
        if !(MIN_SPINS..=MAX_SPINS).contains(&n) {
            return Err(Error::InvalidChain(format!("n = {n} outside [{MIN_SPINS}, {MAX_SPINS}]")));
        }
        if !(j.is_finite() && j > 0.0) {
            return Err(Error::InvalidChain(format!("J must be finite and positive, got {j}")));
        }
        levels.validate()?;
        Ok(Self { n, j, roles, levels })
    }

    /// Repeats `pattern` (e.g. `"AB"`) out to `n` sites.
    pub fn patterned(n: usize, pattern: &str, j: f64, levels: ZeemanLevels) -> Result<Self> {
        let unit = parse_roles(pattern)?;
        if unit.is_empty() {
            return Err(Error::InvalidChain("empty role pattern".into()));
        }
        Self::new(j, unit.iter().copied().cycle().take(n).collect(), levels)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("chain spec serializes")
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn passive_energies(&self) -> Vec<f64> {
        self.roles.iter().map(|&r| self.levels.energy(r)).collect()
    }

    pub fn check_energies(&self, energies: &[f64]) -> Result<()> {
        if energies.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: energies.len() });
        }
        Ok(())
    }
}

/// Which nearest-neighbour interaction to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coupling {
    /// `J σ⃗ᵢ·σ⃗ᵢ₊₁`
    Heisenberg,
    /// `J σᵢ^Z σᵢ₊₁^Z`
    Ising,
}

pub fn basis_index(spins: &[Spin]) -> usize {
    spins.iter().fold(0, |acc, s| (acc << 1) | s.bit())
}

pub fn spin_at(index: usize, site: usize, n: usize) -> Spin {
    if (index >> (n - 1 - site)) & 1 == 1 {
        Spin::Down
    } else {
        Spin::Up
    }
}

pub fn down_count(index: usize) -> usize {
    index.count_ones() as usize
}

/// `Σ Eᵢ zᵢ` for a basis state.
pub fn zeeman_energy(index: usize, energies: &[f64]) -> f64 {
    let n = energies.len();
    energies.iter().enumerate().map(|(i, e)| e * spin_at(index, i, n).z()).sum()
}

/// Single-site Pauli operator embedded in the `2^n` space.
pub fn pauli_site(axis: Axis, site: usize, n: usize) -> Result<ComplexMatrix> {
    if site >= n {
        return Err(Error::SiteOutOfRange { site, n });
    }
    let sigma = match axis {
        Axis::X => pauli_x(),
        Axis::Y => pauli_y(),
        Axis::Z => pauli_z(),
    };
    let mut out = ComplexMatrix::identity(1);
    for k in 0..n {
        out = if k == site { out.kron(&sigma) } else { out.kron(&ComplexMatrix::identity(2)) };
    }
    Ok(out)
}

/// `Σᵢ σᵢ^Z` as a diagonal.
pub fn total_z_diagonal(n: usize) -> Vec<f64> {
    (0..1usize << n).map(|s| n as f64 - 2.0 * down_count(s) as f64).collect()
}

fn diagonal_energy(index: usize, n: usize, j: f64, energies: &[f64]) -> f64 {
    let mut e = zeeman_energy(index, energies);
    for i in 0..n - 1 {
        e += j * spin_at(index, i, n).z() * spin_at(index, i + 1, n).z();
    }
    e
}

/// Basis states obtained by one nearest-neighbour flip-flop from `index`.
fn flip_flop_partners(index: usize, n: usize) -> impl Iterator<Item = usize> {
    (0..n - 1).filter_map(move |i| {
        let (a, b) = (n - 1 - i, n - 2 - i);
        let (ba, bb) = ((index >> a) & 1, (index >> b) & 1);
        (ba != bb).then(|| index ^ (1 << a) ^ (1 << b))
    })
}

fn build(n: usize, j: f64, energies: &[f64], coupling: Coupling) -> ComplexMatrix {
    let dim = 1 << n;
    let mut h = ComplexMatrix::zeros(dim);
    for s in 0..dim {
        h[(s, s)] = C64::new(diagonal_energy(s, n, j, energies), 0.0);
        if coupling == Coupling::Heisenberg {
            for t in flip_flop_partners(s, n) {
                // σ⁺σ⁻ + σ⁻σ⁺ carries amplitude 2 in σ^Xσ^X + σ^Yσ^Y
                h[(t, s)] += C64::new(2.0 * j, 0.0);
            }
        }
    }
    h
}

/// `Σ Eᵢ σᵢ^Z + J Σ σ⃗ᵢ·σ⃗ᵢ₊₁`.
pub fn build_heisenberg(chain: &ChainSpec, energies: &[f64]) -> Result<ComplexMatrix> {
    chain.check_energies(energies)?;
    Ok(build(chain.n, chain.j, energies, Coupling::Heisenberg))
}

/// `Σ Eᵢ σᵢ^Z + J Σ σᵢ^Z σᵢ₊₁^Z`; diagonal in the product basis.
pub fn build_effective_ising(chain: &ChainSpec, energies: &[f64]) -> Result<ComplexMatrix> {
    chain.check_energies(energies)?;
    Ok(build(chain.n, chain.j, energies, Coupling::Ising))
}

pub fn build_hamiltonian(chain: &ChainSpec, energies: &[f64], coupling: Coupling) -> Result<ComplexMatrix> {
    chain.check_energies(energies)?;
    Ok(build(chain.n, chain.j, energies, coupling))
}

/// Three-spin model of a barrier between two qubits whose outer neighbours
/// are frozen `|↑⟩`: `(A+J)(σ₂^Z + σ₄^Z) + ε σ₃^Z + J(σ⃗₂·σ⃗₃ + σ⃗₃·σ⃗₄)`.
///
/// The `ε` term acts along Z. Sites are ordered (qubit, barrier, qubit).
pub fn reduced_three_spin(a: f64, j: f64, eps: f64) -> ComplexMatrix {
    build(3, j, &[a + j, eps, a + j], Coupling::Heisenberg)
}

/// Basis states with `downs` down spins, ascending.
pub fn sector_states(n: usize, downs: usize) -> Vec<usize> {
    (0..1usize << n).filter(|&s| down_count(s) == downs).collect()
}

/// Row-major real block of the Hamiltonian on one magnetization sector.
pub fn sector_hamiltonian(n: usize, j: f64, energies: &[f64], coupling: Coupling, states: &[usize]) -> Vec<f64> {
    let m = states.len();
    let mut h = vec![0.0; m * m];
    for (col, &s) in states.iter().enumerate() {
        h[col * m + col] = diagonal_energy(s, n, j, energies);
        if coupling == Coupling::Heisenberg {
            for t in flip_flop_partners(s, n) {
                let row = states.binary_search(&t).expect("flip-flop stays in sector");
                h[row * m + col] += 2.0 * j;
            }
        }
    }
    h
}

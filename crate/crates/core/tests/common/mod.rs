//! Oracles built from Pauli Kronecker products, independent of the library's
//! Hamiltonian and propagator code.
#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C;

fn kron(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a.kronecker(b)
}

fn site_op(op: &DMatrix<f64>, site: usize, n: usize) -> DMatrix<f64> {
    let id = DMatrix::<f64>::identity(2, 2);
    (0..n).fold(DMatrix::from_element(1, 1, 1.0), |acc, k| kron(&acc, if k == site { op } else { &id }))
}

/// `Σ E_i σ^Z_i + J Σ (σ^Xσ^X + σ^Yσ^Y + σ^Zσ^Z)` with site 0 the most
/// significant tensor factor and `|0⟩ = |↑⟩`. `σ^Y ⊗ σ^Y` is real, so the
/// whole matrix is real; it is assembled as `σ^Yσ^Y = -(iσ^Y)(iσ^Y)`.
pub fn heisenberg(energies: &[f64], j: f64) -> DMatrix<f64> {
    let n = energies.len();
    let x = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
    let iy = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
    let z = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
    let mut h = DMatrix::<f64>::zeros(1 << n, 1 << n);
    for (i, &e) in energies.iter().enumerate() {
        h += site_op(&z, i, n) * e;
    }
    for i in 0..n.saturating_sub(1) {
        h += (site_op(&x, i, n) * site_op(&x, i + 1, n)) * j;
        h -= (site_op(&iy, i, n) * site_op(&iy, i + 1, n)) * j;
        h += (site_op(&z, i, n) * site_op(&z, i + 1, n)) * j;
    }
    h
}

/// `e^{-iHt}` for real symmetric `H`.
pub fn propagator(h: &DMatrix<f64>, t: f64) -> DMatrix<C> {
    let eig = SymmetricEigen::new(h.clone());
    let v = eig.eigenvectors.map(|x| C::new(x, 0.0));
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|e| C::from_polar(1.0, -e * t)));
    &v * d * v.transpose()
}

/// Basis index of a spin pattern written as a `u`/`d` string, site 0 first.
pub fn index(pattern: &str) -> usize {
    pattern.chars().fold(0, |acc, c| (acc << 1) | usize::from(c == 'd'))
}

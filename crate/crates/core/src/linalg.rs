//! Dense complex linear algebra used throughout the crate.
//!
//! Operators are stored as row-major dense [`ComplexMatrix`] values. Time
//! evolution goes through a spectral factorization, `U = V e^{-iDt} V†`,
//! which keeps the propagator unitary to rounding error and lets the same
//! eigensystem be reused for many durations.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Numerical tolerances of the kernel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinalgConfig {
    /// Relative symmetry defect accepted by [`hermitian_eig`].
    pub hermitian_tol: f64,
    /// Unitarity defect accepted where a unitary input is required.
    pub unitary_tol: f64,
}

impl Default for LinalgConfig {
    fn default() -> Self {
        Self { hermitian_tol: 1e-12, unitary_tol: 1e-10 }
    }
}

/// Square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim.min(16) {
            let row: Vec<String> = (0..self.dim.min(16))
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from row-major data; `data.len()` must be a perfect square.
    pub fn from_row_major(data: Vec<C64>) -> Result<Self> {
        let dim = (data.len() as f64).sqrt().round() as usize;
        if dim * dim != data.len() {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: data.len() });
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[&[C64]]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            if r.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<C64>> =
            rows.iter().map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect()).collect();
        let refs: Vec<&[C64]> = rows.iter().map(|r| r.as_slice()).collect();
        Self::from_rows(&refs)
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn diag(&self) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&z| z * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            let out_row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let b_row = &other.data[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self { dim: n, data: out })
    }

    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok((0..self.dim).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        Self::from_fn(n * m, |i, j| self[(i / m, j / m)] * other[(i % m, j % m)])
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Entrywise max of `|H - H†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                d = d.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        d
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    /// Square sub-matrix on the given row/column indices.
    pub fn submatrix(&self, indices: &[usize]) -> Self {
        Self::from_fn(indices.len(), |i, j| self[(indices[i], indices[j])])
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.data)
    }

    fn from_nalgebra(m: &DMatrix<C64>) -> Self {
        Self::from_fn(m.nrows(), |i, j| m[(i, j)])
    }
}

/// Serialized as nested rows of `[re, im]` pairs.
impl Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        // `+ 0.0` folds -0.0 into 0.0
        let rows: Vec<Vec<[f64; 2]>> =
            (0..self.dim).map(|i| self.row(i).iter().map(|z| [z.re + 0.0, z.im + 0.0]).collect()).collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<[f64; 2]>>::deserialize(deserializer)?;
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(serde::de::Error::custom("matrix rows must form a square"));
        }
        let data = rows.into_iter().flatten().map(|[re, im]| C64::new(re, im)).collect();
        Ok(ComplexMatrix { dim, data })
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on dimension mismatch; use [`ComplexMatrix::matmul`] for a checked product.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix dimensions must agree")
    }
}

/// Spectral factorization `H = V diag(eigenvalues) V†`, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenSystem {
    /// `V e^{-iDt} V†`.
    pub fn propagator(&self, t: f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let phases: Vec<C64> = self.eigenvalues.iter().map(|&e| C64::from_polar(1.0, -e * t)).collect();
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ZERO;
                for k in 0..n {
                    acc += v[(i, k)] * phases[k] * v[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let d: Vec<C64> = self.eigenvalues.iter().map(|&e| C64::new(e, 0.0)).collect();
        let vd = &self.eigenvectors * &ComplexMatrix::diagonal(&d);
        &vd * &self.eigenvectors.adjoint()
    }
}

pub fn hermitian_eig(h: &ComplexMatrix) -> Result<EigenSystem> {
    hermitian_eig_with(h, &LinalgConfig::default())
}

pub fn hermitian_eig_with(h: &ComplexMatrix, cfg: &LinalgConfig) -> Result<EigenSystem> {
    let scale = h.max_abs().max(f64::MIN_POSITIVE);
    let defect = h.hermiticity_defect();
    let tolerance = cfg.hermitian_tol * scale;
    if defect > tolerance {
        return Err(Error::NonHermitianInput { defect, tolerance });
    }
    let n = h.dim();
    let (values, vectors) = if h.is_real() {
        let real: Vec<f64> = h.data().iter().map(|z| z.re).collect();
        let es = symmetric_eig(n, &real);
        let v = ComplexMatrix::from_fn(n, |i, j| C64::new(es.vectors[(i, j)], 0.0));
        (es.values, v)
    } else {
        // symmetrize so the solver sees an exactly Hermitian input
        let m = h.to_nalgebra();
        let m = (&m + m.adjoint()) * C64::new(0.5, 0.0);
        let es = SymmetricEigen::new(m);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| es.eigenvalues[a].total_cmp(&es.eigenvalues[b]));
        let values = order.iter().map(|&k| es.eigenvalues[k]).collect();
        let v = ComplexMatrix::from_fn(n, |i, j| es.eigenvectors[(i, order[j])]);
        (values, v)
    };
    Ok(EigenSystem { eigenvalues: values, eigenvectors: vectors })
}

/// `e^{-iHt}` for Hermitian `H`.
pub fn expm_i(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    Ok(hermitian_eig(h)?.propagator(t))
}

/// Eigensystem of a real symmetric matrix; `vectors` holds orthonormal columns.
#[derive(Clone, Debug)]
pub struct RealEigenSystem {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

/// Ascending eigen-decomposition of a real symmetric `n x n` matrix given row-major.
pub fn symmetric_eig(n: usize, row_major: &[f64]) -> RealEigenSystem {
    assert_eq!(row_major.len(), n * n);
    if n == 0 {
        return RealEigenSystem { values: vec![], vectors: DMatrix::zeros(0, 0) };
    }
    let m = DMatrix::from_row_slice(n, n, row_major);
    let es = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| es.eigenvalues[a].total_cmp(&es.eigenvalues[b]));
    let values = order.iter().map(|&k| es.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| es.eigenvectors[(i, order[j])]);
    RealEigenSystem { values, vectors }
}

impl RealEigenSystem {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Applies `V e^{-iDt} Vᵀ` to `psi`.
    pub fn evolve(&self, t: f64, psi: &[C64]) -> Vec<C64> {
        let n = self.dim();
        debug_assert_eq!(psi.len(), n);
        let re = DVector::from_iterator(n, psi.iter().map(|z| z.re));
        let im = DVector::from_iterator(n, psi.iter().map(|z| z.im));
        let cr = self.vectors.tr_mul(&re);
        let ci = self.vectors.tr_mul(&im);
        let mut pr = DVector::zeros(n);
        let mut pi = DVector::zeros(n);
        for k in 0..n {
            let z = C64::new(cr[k], ci[k]) * C64::from_polar(1.0, -self.values[k] * t);
            pr[k] = z.re;
            pi[k] = z.im;
        }
        let or = &self.vectors * pr;
        let oi = &self.vectors * pi;
        (0..n).map(|i| C64::new(or[i], oi[i])).collect()
    }

    /// Dense block `V e^{-iDt} Vᵀ` as (real part, imaginary part).
    pub fn propagator_parts(&self, t: f64) -> (DMatrix<f64>, DMatrix<f64>) {
        let n = self.dim();
        let c = DVector::from_iterator(n, self.values.iter().map(|&e| (e * t).cos()));
        let s = DVector::from_iterator(n, self.values.iter().map(|&e| -(e * t).sin()));
        let vc = DMatrix::from_fn(n, n, |i, k| self.vectors[(i, k)] * c[k]);
        let vs = DMatrix::from_fn(n, n, |i, k| self.vectors[(i, k)] * s[k]);
        (&vc * self.vectors.transpose(), &vs * self.vectors.transpose())
    }
}

/// `max |U†U - I|`, entrywise.
pub fn unitarity_defect(u: &ComplexMatrix) -> f64 {
    let g = &u.adjoint() * u;
    let mut d: f64 = 0.0;
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let target = if i == j { ONE } else { ZERO };
            d = d.max((g[(i, j)] - target).norm());
        }
    }
    d
}

/// Global phase `e^{iφ}` minimizing `max |U - e^{iφ}V|`, with that minimum.
pub fn best_global_phase(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<(f64, f64)> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch { expected: u.dim(), found: v.dim() });
    }
    let cost = |phi: f64| {
        let p = C64::from_polar(1.0, phi);
        u.data().iter().zip(v.data()).map(|(a, b)| (a - p * b).norm()).fold(0.0, f64::max)
    };
    let overlap: C64 = u.data().iter().zip(v.data()).map(|(a, b)| b.conj() * a).sum();
    let steps = 256;
    let step = 2.0 * PI / steps as f64;
    let mut best = (overlap.arg(), cost(overlap.arg()));
    for k in 0..steps {
        let phi = -PI + k as f64 * step;
        let c = cost(phi);
        if c < best.1 {
            best = (phi, c);
        }
    }
    let (phi, c) = golden_section_min(cost, best.0 - step, best.0 + step, 1e-13);
    if c < best.1 {
        best = (phi, c);
    }
    Ok(best)
}

/// `‖U − e^{iφ}V‖` (entrywise max) at the optimal global phase.
pub fn op_distance(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<f64> {
    best_global_phase(u, v).map(|(_, d)| d)
}

/// Closest unitary in Frobenius norm (`W V†` from the SVD `M = W Σ V†`).
pub fn polar_unitary(m: &ComplexMatrix) -> ComplexMatrix {
    let svd = m.to_nalgebra().svd(true, true);
    let u = svd.u.expect("left singular vectors requested");
    let v_t = svd.v_t.expect("right singular vectors requested");
    ComplexMatrix::from_nalgebra(&(u * v_t))
}

pub fn determinant(m: &ComplexMatrix) -> C64 {
    m.to_nalgebra().determinant()
}

/// Minimizes a unimodal function on `[a, b]`; returns `(argmin, min)`.
pub fn golden_section_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// 2x2 Pauli matrices.
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[&[ZERO, -I], &[I, ZERO]]).unwrap()
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap()
}

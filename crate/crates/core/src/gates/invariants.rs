use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{determinant, unitarity_defect, ComplexMatrix, C64, I, ONE, ZERO};

/// Unitarity defect accepted for invariant evaluation.
pub const INVARIANT_UNITARY_TOL: f64 = 1e-6;

/// Makhlin local-equivalence invariants `G1 ∈ ℂ`, `G2 ∈ ℝ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalInvariants {
    pub g1_re: f64,
    pub g1_im: f64,
    pub g2: f64,
}

impl LocalInvariants {
    pub fn g1(&self) -> C64 {
        C64::new(self.g1_re, self.g1_im)
    }

    /// Largest component difference.
    pub fn distance(&self, other: &LocalInvariants) -> f64 {
        (self.g1_re - other.g1_re)
            .abs()
            .max((self.g1_im - other.g1_im).abs())
            .max((self.g2 - other.g2).abs())
    }

    pub fn identity_class() -> Self {
        Self { g1_re: 1.0, g1_im: 0.0, g2: 3.0 }
    }
}

fn magic_basis() -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_rows(&[&[ONE, ZERO, ZERO, I], &[ZERO, I, ONE, ZERO], &[ZERO, I, -ONE, ZERO], &[ONE, ZERO, ZERO, -I]])
        .expect("4x4")
        .scale(C64::new(s, 0.0))
}

pub fn local_equivalence_invariants(u: &ComplexMatrix) -> Result<LocalInvariants> {
    if u.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: u.dim() });
    }
    let defect = unitarity_defect(u);
    if defect > INVARIANT_UNITARY_TOL {
        return Err(Error::NotUnitary { defect });
    }
    let q = magic_basis();
    let ub = &(&q.adjoint() * u) * &q;
    let m = &ub.transpose() * &ub;
    let det = determinant(u);
    let tr = m.trace();
    let tr2 = (&m * &m).trace();
    let g1 = tr * tr / (det * 16.0);
    let g2 = (tr * tr - tr2) / (det * 4.0);
    Ok(LocalInvariants { g1_re: g1.re, g1_im: g1.im, g2: g2.re })
}

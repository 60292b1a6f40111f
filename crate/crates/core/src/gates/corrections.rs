use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::linalg::{unitarity_defect, ComplexMatrix, C64, ONE};

/// Largest off-diagonal magnitude tolerated by [`derive_local_corrections`].
pub const OFF_DIAGONAL_LIMIT: f64 = 1e-3;

/// Diagonal single-qubit corrections with `(Q1 ⊗ Q2)·K = diag(1, 1, 1, e^{iφ})`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalCorrections {
    pub q1: ComplexMatrix,
    pub q2: ComplexMatrix,
    /// Conditional phase in `(-π, π]`.
    pub phi: f64,
    pub off_diagonal_residual: f64,
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_angle(a: f64) -> f64 {
    let w = (a + PI).rem_euclid(TAU) - PI;
    if w <= -PI { w + TAU } else { w }
}

/// Diagonal corrections from the phases of `K`'s diagonal, without
/// rejecting off-diagonal weight; the residual is still reported.
pub fn local_phase_decomposition(k: &ComplexMatrix) -> Result<LocalCorrections> {
    if k.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: k.dim() });
    }
    let defect = unitarity_defect(k);
    if defect > 1e-6 {
        return Err(Error::NotUnitary { defect });
    }
    let residual = (0..4)
        .flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| k[(i, j)].norm())
        .fold(0.0, f64::max);
    let [a, b, c, d] = [0, 1, 2, 3].map(|i| k[(i, i)].arg());
    let q1 = ComplexMatrix::diagonal(&[C64::from_polar(1.0, -a), C64::from_polar(1.0, -c)]);
    let q2 = ComplexMatrix::diagonal(&[ONE, C64::from_polar(1.0, -(b - a))]);
    Ok(LocalCorrections { q1, q2, phi: wrap_angle(d - c - b + a), off_diagonal_residual: residual })
}

pub fn derive_local_corrections(k: &ComplexMatrix) -> Result<LocalCorrections> {
    let lc = local_phase_decomposition(k)?;
    if lc.off_diagonal_residual > OFF_DIAGONAL_LIMIT {
        return Err(Error::NotDiagonalizableLocally { residual: lc.off_diagonal_residual });
    }
    Ok(lc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::ideal::{cnot, controlled_phase};

    #[test]
    fn phase_arithmetic() {
        let (a, b, c, d) = (0.3, -1.1, 2.0, 0.4);
        let k = ComplexMatrix::diagonal(&[a, b, c, d].map(|x| C64::from_polar(1.0, x)));
        let lc = derive_local_corrections(&k).unwrap();
        assert!((lc.phi - wrap_angle(d - c - b + a)).abs() < 1e-14);
        let corrected = &lc.q1.kron(&lc.q2) * &k;
        assert!(corrected.sub(&controlled_phase(lc.phi)).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn identity_has_zero_phase() {
        let lc = derive_local_corrections(&ComplexMatrix::identity(4)).unwrap();
        assert_eq!(lc.phi, 0.0);
        assert_eq!(lc.off_diagonal_residual, 0.0);
    }

    #[test]
    fn wraps_into_half_open_interval() {
        assert_eq!(wrap_angle(PI), PI);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn non_diagonal_rejected() {
        assert!(matches!(derive_local_corrections(&cnot()), Err(Error::NotDiagonalizableLocally { .. })));
    }
}

use std::f64::consts::PI;

use crate::linalg::{ComplexMatrix, C64, ONE, ZERO};

/// Entangler produced by one resonant barrier revival between two
/// single-spin qubits: `[[1,0,0,0],[0,W,i√3W,0],[0,i√3W,W,0],[0,0,0,1]]`,
/// `W = ½e^{iπ/3}`.
pub fn g_gate() -> ComplexMatrix {
    let w = C64::from_polar(0.5, PI / 3.0);
    let x = C64::new(0.0, 3f64.sqrt()) * w;
    ComplexMatrix::from_rows(&[&[ONE, ZERO, ZERO, ZERO], &[ZERO, w, x, ZERO], &[ZERO, x, w, ZERO], &[ZERO, ZERO, ZERO, ONE]])
        .expect("4x4")
}

/// Controlled phase `diag(1, 1, 1, e^{iφ})`.
pub fn controlled_phase(phi: f64) -> ComplexMatrix {
    ComplexMatrix::diagonal(&[ONE, ONE, ONE, C64::from_polar(1.0, phi)])
}

/// Phase quoted for the two-spin-encoded entangler.
pub const M_PHASE_QUOTED: f64 = -PI / 2.236_067_977_499_79;

/// `diag(1, 1, 1, e^{-iπ/√5})`.
pub fn m_gate() -> ComplexMatrix {
    controlled_phase(-PI / 5f64.sqrt())
}

/// CNOT with qubit 0 as control.
pub fn cnot() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[1.0, 0.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0], &[0.0, 0.0, 0.0, 1.0], &[0.0, 0.0, 1.0, 0.0]])
        .expect("4x4")
}

/// `Rz(a)·Ry(b)·Rz(c)` with `Rz(θ) = diag(e^{-iθ/2}, e^{iθ/2})`.
pub fn euler_zyz(a: f64, b: f64, c: f64) -> ComplexMatrix {
    let (cb, sb) = ((b / 2.0).cos(), (b / 2.0).sin());
    let p = |x: f64| C64::from_polar(1.0, x / 2.0);
    ComplexMatrix::from_rows(&[
        &[p(-a - c) * cb, -p(-a + c) * sb],
        &[p(a - c) * sb, p(a + c) * cb],
    ])
    .expect("2x2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{pauli_y, pauli_z, unitarity_defect, expm_i};

    #[test]
    fn ideal_gates_are_unitary() {
        for g in [g_gate(), m_gate(), cnot(), controlled_phase(0.3)] {
            assert!(unitarity_defect(&g) < 1e-15);
        }
        assert!((M_PHASE_QUOTED + PI / 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn euler_matches_exponentials() {
        let (a, b, c) = (0.3, 1.1, -0.7);
        let rz = |t: f64| expm_i(&pauli_z(), t / 2.0).unwrap();
        let ry = expm_i(&pauli_y(), b / 2.0).unwrap();
        let expect = &(&rz(a) * &ry) * &rz(c);
        assert!(euler_zyz(a, b, c).sub(&expect).unwrap().max_abs() < 1e-14);
    }
}

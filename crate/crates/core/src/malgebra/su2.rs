use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::{Error, Result};

use super::{m_cos, m_sin};

/// `m_cos(θ'/2) I + i m_sin(θ'/2) (n·σ)`
#[derive(Debug, Clone, PartialEq)]
pub struct SU2AlphaElement {
    pub matrix: Matrix2<Complex64>,
    pub axis: [f64; 3],
    pub angle: f64,
    pub alpha: f64,
}

impl SU2AlphaElement {
    pub fn determinant(&self) -> Complex64 {
        self.matrix.determinant()
    }

    /// Largest entry of `|M M† - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let product = self.matrix * self.matrix.adjoint() - Matrix2::identity();
        product.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// `n·σ` for the standard Pauli matrices.
pub fn pauli_contraction(axis: [f64; 3]) -> Matrix2<Complex64> {
    let [n1, n2, n3] = axis;
    Matrix2::new(
        Complex64::new(n3, 0.0),
        Complex64::new(n1, -n2),
        Complex64::new(n1, n2),
        Complex64::new(-n3, 0.0),
    )
}

pub fn su2_alpha(theta_prime: f64, axis: [f64; 3], alpha: f64) -> Result<SU2AlphaElement> {
    let norm = axis.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !((norm - 1.0).abs() <= 1e-12) {
        return Err(Error::Domain(format!("rotation axis must be a unit vector, |n| = {norm}")));
    }
    let c = m_cos(theta_prime / 2.0, alpha)?;
    let s = m_sin(theta_prime / 2.0, alpha)?;
    let matrix = Matrix2::identity() * Complex64::new(c, 0.0) + pauli_contraction(axis) * Complex64::new(0.0, s);
    Ok(SU2AlphaElement {
        matrix,
        axis,
        angle: theta_prime,
        alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zero_angle_is_identity() {
        let g = su2_alpha(0.0, [0.0, 0.6, 0.8], 0.3).unwrap();
        assert!((g.matrix - Matrix2::identity()).iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn classical_half_turn() {
        let g = su2_alpha(PI, [0.0, 0.0, 1.0], 0.0).unwrap();
        let expected = Matrix2::new(
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
        );
        assert!((g.matrix - expected).iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn deformed_element_is_special_unitary() {
        let n = [1.0 / 3f64.sqrt(); 3];
        for k in 0..40 {
            let g = su2_alpha(-6.0 + 0.3 * k as f64, n, 0.3).unwrap();
            assert!((g.determinant() - 1.0).norm() < 1e-12);
            assert!(g.unitarity_defect() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_unit_axis() {
        assert!(su2_alpha(1.0, [1.0, 1.0, 0.0], 0.1).is_err());
    }
}

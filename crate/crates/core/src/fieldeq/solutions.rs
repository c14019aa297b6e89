use num_complex::Complex64;

use crate::error::{Error, Result};

use super::FieldParams;

fn pole_guard(den: f64, what: &str) -> Result<f64> {
    if den.abs() < 1e-300 {
        Err(Error::Singularity(format!("{what} vanishes")))
    } else {
        Ok(den)
    }
}

/// Modified Yukawa potential `-c0/(r(e^{μr} + α))` with `μ = p.mass()`.
pub fn modified_yukawa(r: f64, c0: f64, p: &FieldParams) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    let mu = p.mass()?;
    let den = pole_guard((mu * r).exp_m1() + (1.0 + p.alpha), "e^{μr} + α")?;
    Ok(-c0 / (r * den))
}

/// Partial wave `ψ₀/(e^{iμz} + α)` with `μ = p.mass()`.
pub fn wave_solution(z: f64, psi0: Complex64, p: &FieldParams) -> Result<Complex64> {
    let mu = p.mass()?;
    let den = Complex64::from_polar(1.0, mu * z) + p.alpha;
    pole_guard(den.norm(), "e^{iμz} + α")?;
    Ok(psi0 / den)
}

/// `1/(e^{μx} + α)`, annihilated by the m-KGF operator.
pub fn mkgf_exact_solution(x: [f64; 4], p: &FieldParams) -> Result<f64> {
    let s = p.dot(x);
    let den = pole_guard(s.exp_m1() + (1.0 + p.alpha), "e^{μx} + α")?;
    Ok(1.0 / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn yukawa_examples() {
        let p = FieldParams::at_rest(1.0, 1.0 / 137.0).unwrap();
        let v = modified_yukawa(1.0, 1.0, &p).unwrap();
        assert!((v + 1.0 / (std::f64::consts::E + 1.0 / 137.0)).abs() < 1e-15);
        assert!((v + 0.366_894_237_907_133_6).abs() < 1e-15);
        assert_eq!(modified_yukawa(800.0, 1.0, &p).unwrap(), 0.0);
        assert!(modified_yukawa(0.0, 1.0, &p).is_err());
        assert!(modified_yukawa(-1.0, 1.0, &p).is_err());
        let p = FieldParams::at_rest(-1.0, -1.0).unwrap();
        assert!(matches!(modified_yukawa(1e-320, 1.0, &p), Err(Error::Singularity(_))));
    }

    #[test]
    fn classical_reductions() {
        for mu in [0.5, 1.0, 2.3] {
            let p = FieldParams::at_rest(mu, 0.0).unwrap();
            for r in [0.1, 1.0, 7.5] {
                let y = modified_yukawa(r, 1.7, &p).unwrap();
                assert!(rel(y, -1.7 * (-mu * r).exp() / r) < 1e-15);
                let w = wave_solution(r, Complex64::new(0.5, -2.0), &p).unwrap();
                let plane = Complex64::new(0.5, -2.0) * Complex64::from_polar(1.0, -mu * r);
                assert!((w - plane).norm() / plane.norm() < 1e-15);
            }
        }
        let p = FieldParams::slice(1.5, 0.5, 0.0).unwrap();
        let x = [0.3, -0.2, 1.0, 1.0];
        assert!(rel(mkgf_exact_solution(x, &p).unwrap(), (-p.dot(x)).exp()) < 1e-15);
    }

    #[test]
    fn wave_examples() {
        let p = FieldParams::at_rest(1.0, 0.3).unwrap();
        let v = wave_solution(0.0, Complex64::new(1.0, 0.0), &p).unwrap();
        assert!((v - 1.0 / 1.3).norm() < 1e-15);
        // |ψ|: on the circle with centre -α/(1-α²) and radius 1/(1-α²)
        let a: f64 = 0.3;
        for k in 0..50 {
            let w = wave_solution(0.13 * k as f64, Complex64::new(1.0, 0.0), &p).unwrap();
            let dist = (w.conj() + a / (1.0 - a * a)).norm();
            assert!((dist - 1.0 / (1.0 - a * a)).abs() < 1e-14);
        }
        let p = FieldParams::at_rest(1.0, -1.0).unwrap();
        assert!(wave_solution(0.0, Complex64::new(1.0, 0.0), &p).is_err());
    }

    #[test]
    fn exact_solution_examples() {
        let p = FieldParams::slice(1.0, 0.0, 0.3).unwrap();
        assert!((mkgf_exact_solution([0.0; 4], &p).unwrap() - 1.0 / 1.3).abs() < 1e-15);
        let p = FieldParams::slice(1.0, 0.0, -1.0).unwrap();
        assert!(mkgf_exact_solution([0.0; 4], &p).is_err());
    }
}

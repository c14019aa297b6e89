//! The bitrial exponent and the broken-symmetry group U(1,α).
//!
//! Group elements are `g = 1/(e^{-iθ'} + α)`. For real `θ'` they trace the
//! circle of radius `1/(1-α²)` centred at `-α/(1-α²)`. Two binary
//! operations on parameters live here side by side:
//!
//! - [`m_mul_param`] pulls the complex product of elements back through the
//!   bitrial logarithm. Its unit is the complex parameter `i ln(1-α)`.
//! - [`oplus_pullback`] adds the Blaschke-corresponding classical angles and
//!   maps the sum back. Its unit is `0`.
//!
//! The two do not agree in general; [`fuzz::axiom_fuzz`] measures by how much.

pub mod fuzz;
mod su2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numcore::{principal_ln, wrap_angle};

pub use su2::{su2_alpha, SU2AlphaElement};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// A group parameter `θ` or `θ'` together with the symmetry-breaking `α`.
///
/// The value is complex because the unit element `i ln(1-α)` is.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseParam {
    pub value: Complex64,
    pub alpha: f64,
}

impl PhaseParam {
    pub fn new(value: Complex64, alpha: f64) -> Self {
        Self { value, alpha }
    }

    pub fn real(theta: f64, alpha: f64) -> Self {
        Self {
            value: Complex64::new(theta, 0.0),
            alpha,
        }
    }

    fn real_value(&self, op: &str) -> Result<f64> {
        if self.value.im != 0.0 {
            return Err(Error::Domain(format!(
                "{op} takes a real angle, got complex parameter {}",
                self.value
            )));
        }
        Ok(self.value.re)
    }
}

/// An element of U(1,α) as a point in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub value: Complex64,
}

impl GroupElement {
    pub fn new(value: Complex64) -> Self {
        Self { value }
    }

    /// `|g + α/(1-α²)| - 1/(1-α²)`; zero for every image of a real parameter.
    pub fn circle_defect(&self, alpha: f64) -> f64 {
        let s = 1.0 - alpha * alpha;
        (self.value + alpha / s).norm() - 1.0 / s
    }
}

fn check_disk(alpha: f64) -> Result<()> {
    if alpha.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("|α| must be below 1, got {alpha}")))
    }
}

fn check_nonzero(z: Complex64, what: &str, scale: f64) -> Result<()> {
    if z.norm() <= 4.0 * f64::EPSILON * scale || !z.norm().is_finite() {
        Err(Error::Singularity(format!("{what} vanishes")))
    } else {
        Ok(())
    }
}

/// `1/(e^{-iθ'} + α)`
pub fn m_exp(theta: &PhaseParam) -> Result<GroupElement> {
    let e = (-I * theta.value).exp();
    let den = e + theta.alpha;
    check_nonzero(den, "e^{-iθ'} + α", e.norm() + theta.alpha.abs())?;
    Ok(GroupElement::new(den.inv()))
}

/// `(1-α²)/(e^{-iθ'} + α)`; reduces to `e^{iθ}` at `α = 0`.
pub fn m_exp_normalized(theta: &PhaseParam) -> Result<GroupElement> {
    let g = m_exp(theta)?;
    Ok(GroupElement::new(g.value * (1.0 - theta.alpha * theta.alpha)))
}

/// Functional inverse of [`m_exp`]: `θ' = i Ln(1/w - α)` on the principal
/// branch, so `m_exp(bitrial_log(w)) = w`.
pub fn bitrial_log(w: GroupElement, alpha: f64) -> Result<PhaseParam> {
    if w.value.norm() == 0.0 || !w.value.norm().is_finite() {
        return Err(Error::Domain(format!("bitrial logarithm of {}", w.value)));
    }
    let inv = w.value.inv();
    let arg = inv - alpha;
    if arg.norm() <= 4.0 * f64::EPSILON * (inv.norm() + alpha.abs()) {
        return Err(Error::Domain("1/w - α vanishes (logarithmic pole)".into()));
    }
    Ok(PhaseParam::new(I * principal_ln(arg), alpha))
}

fn same_alpha(a: &PhaseParam, b: &PhaseParam) -> Result<f64> {
    if a.alpha != b.alpha {
        return Err(Error::Domain(format!(
            "parameters belong to different groups (α = {} and {})",
            a.alpha, b.alpha
        )));
    }
    Ok(a.alpha)
}

/// Parameter of the product element: `m_exp(c) = m_exp(a) m_exp(b)`.
///
/// Parameters are equal only up to the principal-branch choice; compare the
/// elements, not the parameters.
pub fn m_mul_param(a: &PhaseParam, b: &PhaseParam) -> Result<PhaseParam> {
    let alpha = same_alpha(a, b)?;
    let product = m_exp(a)?.value * m_exp(b)?.value;
    bitrial_log(GroupElement::new(product), alpha)
}

/// Unit parameter `i ln(1-α)`; its image under [`m_exp`] is 1.
pub fn identity_param(alpha: f64) -> Result<PhaseParam> {
    if !(alpha < 1.0) {
        return Err(Error::Domain(format!("unit parameter needs α < 1, got {alpha}")));
    }
    Ok(PhaseParam::new(I * (1.0 - alpha).ln(), alpha))
}

/// Inverse parameter `i ln((1 - α e^{-iθ'} - α²)/(e^{-iθ'} + α))`, so that
/// `m_exp(inverse) · m_exp(θ') = 1`.
pub fn inverse_param(theta: &PhaseParam) -> Result<PhaseParam> {
    let alpha = theta.alpha;
    let e = (-I * theta.value).exp();
    let den = e + alpha;
    check_nonzero(den, "e^{-iθ'} + α", e.norm() + alpha.abs())?;
    let num = 1.0 - alpha * e - alpha * alpha;
    let ratio = num / den;
    if ratio.norm() == 0.0 || !ratio.norm().is_finite() {
        return Err(Error::Domain("inverse parameter: logarithm of zero".into()));
    }
    Ok(PhaseParam::new(I * principal_ln(ratio), alpha))
}

/// Classical angle `θ` matched to `θ'` by `e^{iθ} = (e^{iθ'}+α)/(1+α e^{iθ'})`,
/// reported in `[0, 2π)`.
pub fn theta_of(theta_prime: &PhaseParam) -> Result<f64> {
    check_disk(theta_prime.alpha)?;
    let t = theta_prime.real_value("theta_of")?;
    let alpha = theta_prime.alpha;
    let e = Complex64::from_polar(1.0, t);
    Ok(wrap_angle(((e + alpha) / (1.0 + alpha * e)).arg()))
}

/// Inverse of [`theta_of`]: `e^{iθ'} = (e^{iθ}-α)/(1-α e^{iθ})`, in `[0, 2π)`.
pub fn theta_prime_of(theta: f64, alpha: f64) -> Result<f64> {
    check_disk(alpha)?;
    let e = Complex64::from_polar(1.0, theta);
    Ok(wrap_angle(((e - alpha) / (1.0 - alpha * e)).arg()))
}

/// `θ'₁ ⊕ θ'₂`: add the corresponding classical angles and map back.
pub fn oplus_pullback(t1p: f64, t2p: f64, alpha: f64) -> Result<f64> {
    let t1 = theta_of(&PhaseParam::real(t1p, alpha))?;
    let t2 = theta_of(&PhaseParam::real(t2p, alpha))?;
    theta_prime_of(t1 + t2, alpha)
}

fn m_trig_pair(theta: f64, alpha: f64) -> Result<(Complex64, Complex64)> {
    check_disk(alpha)?;
    let forward = (Complex64::from_polar(1.0, -theta) + alpha).inv();
    let backward = (Complex64::from_polar(1.0, theta) + alpha).inv();
    Ok((forward, backward))
}

/// `α + ((1-α²)/2) (1/(e^{-iθ}+α) + 1/(e^{iθ}+α))`
pub fn m_cos(theta: f64, alpha: f64) -> Result<f64> {
    let (f, b) = m_trig_pair(theta, alpha)?;
    Ok(alpha + ((1.0 - alpha * alpha) * 0.5 * (f + b)).re)
}

/// `((1-α²)/(2i)) (1/(e^{-iθ}+α) - 1/(e^{iθ}+α))`
pub fn m_sin(theta: f64, alpha: f64) -> Result<f64> {
    let (f, b) = m_trig_pair(theta, alpha)?;
    Ok(((1.0 - alpha * alpha) / (2.0 * I) * (f - b)).re)
}

/// `ln(x/(1+αx))`
pub fn m_ln(x: f64, alpha: f64) -> Result<f64> {
    let den = 1.0 + alpha * x;
    if den == 0.0 {
        return Err(Error::Domain(format!("m_ln pole at x = -1/α = {x}")));
    }
    let arg = x / den;
    if !(arg > 0.0) {
        return Err(Error::Domain(format!("m_ln argument x/(1+αx) = {arg} is not positive")));
    }
    Ok(arg.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn m_exp_examples() {
        assert!((m_exp(&PhaseParam::real(0.0, 0.5)).unwrap().value - c(2.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!((m_exp(&PhaseParam::real(PI, 0.5)).unwrap().value - c(-2.0, 0.0)).norm() < 1e-14);
        for k in 0..64 {
            let g = m_exp(&PhaseParam::real(k as f64 * 0.1, 0.3)).unwrap();
            assert!((g.value + 0.329_670_329_670_329_7).norm() - 1.098_901_098_901_099 < 1e-12);
            assert!(g.circle_defect(0.3).abs() < 1e-12);
        }
    }

    #[test]
    fn m_exp_pole() {
        assert!(matches!(m_exp(&PhaseParam::real(0.0, -1.0)), Err(Error::Singularity(_))));
    }

    #[test]
    fn normalized_examples() {
        assert!((m_exp_normalized(&PhaseParam::real(0.0, 0.3)).unwrap().value - c(0.7, 0.0)).norm() < 1e-15);
        assert!((m_exp_normalized(&PhaseParam::real(PI, 0.3)).unwrap().value - c(-1.3, 0.0)).norm() < 1e-14);
        let g = m_exp_normalized(&PhaseParam::real(1.234, 0.0)).unwrap();
        assert!((g.value - Complex64::from_polar(1.0, 1.234)).norm() < 1e-15);
    }

    #[test]
    fn log_examples() {
        let p = bitrial_log(GroupElement::new(c(1.0 / 1.5, 0.0)), 0.5).unwrap();
        assert!(p.value.norm() < 1e-15);
        let p = bitrial_log(GroupElement::new(Complex64::from_polar(1.0, PI / 3.0)), 0.0).unwrap();
        assert!((p.value - c(PI / 3.0, 0.0)).norm() < 1e-15);
        assert!(bitrial_log(GroupElement::new(c(0.0, 0.0)), 0.3).is_err());
        // 1/w - α = 0
        assert!(bitrial_log(GroupElement::new(c(1.0 / 0.3, 0.0)), 0.3).is_err());
    }

    #[test]
    fn identity_examples() {
        assert_eq!(identity_param(0.0).unwrap().value, c(0.0, 0.0));
        let p = identity_param(0.5).unwrap();
        assert!((p.value - c(0.0, -std::f64::consts::LN_2)).norm() < 1e-15);
        let g = m_exp(&identity_param(0.3).unwrap()).unwrap();
        assert!((g.value - c(1.0, 0.0)).norm() < 1e-15);
        assert!(identity_param(1.0).is_err());
    }

    #[test]
    fn inverse_examples() {
        let p = inverse_param(&PhaseParam::real(0.0, 0.3)).unwrap();
        let expected = (0.61f64 / 1.3).ln();
        assert!((p.value - c(0.0, expected)).norm() < 1e-15);
        assert!((expected - (-0.756_6)).abs() < 1e-4);
        let p = inverse_param(&PhaseParam::real(1.1, 0.0)).unwrap();
        assert!((p.value.re + 1.1).abs() < 1e-15 && p.value.im.abs() < 1e-15);
    }

    #[test]
    fn mul_reduces_to_addition() {
        let c = m_mul_param(&PhaseParam::real(0.4, 0.0), &PhaseParam::real(2.1, 0.0)).unwrap();
        assert!((c.value.re - 2.5).abs() < 1e-14 && c.value.im.abs() < 1e-15);
        let c = m_mul_param(&PhaseParam::real(2.0, 0.0), &PhaseParam::real(2.0, 0.0)).unwrap();
        assert!(crate::numcore::circular_distance(c.value.re, 4.0) < 1e-14);
    }

    #[test]
    fn mul_unit_and_inverse() {
        let a = PhaseParam::real(0.9, 0.3);
        let c = m_mul_param(&a, &identity_param(0.3).unwrap()).unwrap();
        assert!(crate::numcore::circular_distance(c.value.re, 0.9) < 1e-14);
        assert!(c.value.im.abs() < 1e-14);
        let c = m_mul_param(&a, &inverse_param(&a).unwrap()).unwrap();
        assert!((m_exp(&c).unwrap().value - 1.0).norm() < 1e-14);
        assert!((c.value - identity_param(0.3).unwrap().value).norm() < 1e-14);
        let mixed = m_mul_param(&a, &PhaseParam::real(0.1, 0.2));
        assert!(mixed.is_err());
    }

    #[test]
    fn blaschke_examples() {
        assert_eq!(theta_of(&PhaseParam::real(0.0, 0.3)).unwrap(), 0.0);
        assert!((theta_of(&PhaseParam::real(PI, 0.3)).unwrap() - PI).abs() < 1e-15);
        assert!((theta_of(&PhaseParam::real(2.2, 0.0)).unwrap() - 2.2).abs() < 1e-15);
        assert_eq!(theta_prime_of(0.0, 0.3).unwrap(), 0.0);
        assert!((theta_prime_of(4.0, 0.0).unwrap() - 4.0).abs() < 1e-15);
        let near_end = theta_of(&PhaseParam::real(TAU - 1e-9, 0.3)).unwrap();
        assert!(near_end < TAU && TAU - near_end < 1e-8);
        assert!(theta_of(&PhaseParam::new(c(0.1, 0.2), 0.3)).is_err());
        assert!(theta_prime_of(0.1, 1.0).is_err());
    }

    #[test]
    fn blaschke_matches_explicit_log_formula() {
        // θ' = θ + i ln((1-αe^{iθ})/(1-αe^{-iθ}))
        let alpha = 0.3;
        for k in 0..50 {
            let theta = 0.12 * k as f64;
            let lhs = theta_prime_of(theta, alpha).unwrap();
            let formula = c(theta, 0.0)
                + I * principal_ln((1.0 - alpha * Complex64::from_polar(1.0, theta))
                    / (1.0 - alpha * Complex64::from_polar(1.0, -theta)));
            assert!(formula.im.abs() < 1e-14);
            assert!(crate::numcore::circular_distance(lhs, formula.re) < 1e-13);
        }
    }

    #[test]
    fn pullback_examples() {
        assert!(crate::numcore::circular_distance(oplus_pullback(1.3, 0.0, 0.3).unwrap(), 1.3) < 1e-14);
        assert!(crate::numcore::circular_distance(oplus_pullback(1.3, 5.5, 0.0).unwrap(), 6.8) < 1e-14);
    }

    #[test]
    fn trig_examples() {
        assert!((m_cos(0.0, 0.3).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(m_sin(0.0, 0.3).unwrap(), 0.0);
        assert!((m_cos(PI / 2.0, 0.3).unwrap() - 0.6 / 1.09).abs() < 1e-15);
        assert!((m_sin(PI / 2.0, 0.3).unwrap() - 0.91 / 1.09).abs() < 1e-15);
        assert!((m_cos(PI / 2.0, 0.3).unwrap() - 0.550_458_7).abs() < 1e-7);
        assert!((m_sin(PI / 2.0, 0.3).unwrap() - 0.834_862_4).abs() < 1e-7);
        assert!((m_cos(0.77, 0.0).unwrap() - 0.77f64.cos()).abs() < 1e-15);
        assert!((m_sin(0.77, 0.0).unwrap() - 0.77f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn euler_type_identity() {
        for k in 0..100 {
            let theta = -3.0 + 0.07 * k as f64;
            let lhs = c(m_cos(theta, 0.3).unwrap(), m_sin(theta, 0.3).unwrap());
            let rhs = 0.3 + m_exp_normalized(&PhaseParam::real(theta, 0.3)).unwrap().value;
            assert!((lhs - rhs).norm() < 1e-13);
        }
    }

    #[test]
    fn log_examples_real() {
        assert!((m_ln(1.0, 0.3).unwrap() + 1.3f64.ln()).abs() < 1e-15);
        assert!((m_ln(1.0, 0.3).unwrap() + 0.262_364_3).abs() < 1e-7);
        assert!((m_ln(2.5, 0.0).unwrap() - 2.5f64.ln()).abs() < 1e-15);
        assert!(m_ln(-1.0 / 0.3, 0.3).is_err());
        assert!(m_ln(-0.5, 0.0).is_err());
    }
}

//! The m-algebra: bitrial exponent on its circle, element-level group axioms
//! and the Blaschke-type angle correspondence.

use bitrial::malgebra::fuzz::axiom_fuzz;
use bitrial::malgebra::{m_cos, m_exp, m_mul_param, m_sin, theta_of, theta_prime_of, PhaseParam};

fn main() -> bitrial::Result<()> {
    let alpha = 0.3;
    let (a, b) = (PhaseParam::real(0.7, alpha), PhaseParam::real(2.1, alpha));
    let ab = m_mul_param(&a, &b)?;
    let product = m_exp(&a)?.value * m_exp(&b)?.value;
    println!("m_exp(a ⊙ b) = {:.12}", m_exp(&ab)?.value);
    println!("m_exp(a)·m_exp(b) = {product:.12}");
    // images of real parameters lie on |w + α/(1-α²)| = 1/(1-α²)
    println!("circle defect of m_exp(a) {:.2e}", m_exp(&a)?.circle_defect(alpha));

    let theta = 1.0;
    let tp = theta_prime_of(theta, alpha)?;
    println!("theta {theta} -> theta' {tp:.12} -> {:.12}", theta_of(&PhaseParam::real(tp, alpha))?);
    let (c, s) = (m_cos(theta, alpha)?, m_sin(theta, alpha)?);
    println!("m_cos² + m_sin² - 1 = {:.2e}", c * c + s * s - 1.0);

    for alpha in [-0.3, 0.1, 1.0 / 137.0] {
        let r = axiom_fuzz(alpha, 10_000, 1)?;
        println!(
            "alpha {alpha:8.5}: max axiom violation {:.2e}, mean pullback mismatch {:.3}",
            r.max_violation(),
            r.mismatch_mean
        );
    }
    Ok(())
}

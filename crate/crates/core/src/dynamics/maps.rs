//! Single-step maps of the VRP family and their derivatives.

use crate::error::{Error, Result};

/// Parameters of the VRP family.
///
/// `q` is the growth factor of `x ↦ q x^Φ/(e^x + α)`, `q1` and `mu` the source
/// strength and scale of the inverse-square form, `phi` the exponent and
/// `alpha` the symmetry-breaking shift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapParams {
    pub q: f64,
    pub q1: f64,
    pub phi: f64,
    pub mu: f64,
    pub alpha: f64,
}

impl Default for MapParams {
    fn default() -> Self {
        Self {
            q: 1.0,
            q1: 1.0,
            phi: 1.0,
            mu: 1.0,
            alpha: 0.0,
        }
    }
}

impl MapParams {
    /// `Φ = 1`, `α = 0`: the Ricker map `q x e^{-x}`.
    pub fn ricker(q: f64) -> Self {
        Self {
            q,
            ..Self::default()
        }
    }

    pub fn vrp(q: f64, phi: f64, alpha: f64) -> Self {
        Self {
            q,
            phi,
            alpha,
            ..Self::default()
        }
    }

    pub fn four_rats(q1: f64, mu: f64, alpha: f64) -> Self {
        Self {
            q1,
            mu,
            alpha,
            ..Self::default()
        }
    }
}

/// Which recurrence an orbit follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepRule {
    /// `x ↦ q x^Φ/(e^x + α)`
    Vrp,
    /// `r ↦ 2 q₁ μ/(r² (e^{μr} + α))`
    FourRats,
    /// `y ↦ -2 q₁ μ³/(y² (e^y + α))`, with `y = μx`
    LimitMap,
}

impl StepRule {
    pub fn apply(self, x: f64, p: &MapParams) -> Result<f64> {
        match self {
            StepRule::Vrp => vrp_step(x, p),
            StepRule::FourRats => four_rats_step(x, p),
            StepRule::LimitMap => limit_map_step(x, p),
        }
    }

    pub fn derivative(self, x: f64, p: &MapParams) -> Result<f64> {
        match self {
            StepRule::Vrp => vrp_derivative(x, p),
            StepRule::FourRats => four_rats_derivative(x, p),
            StepRule::LimitMap => limit_map_derivative(x, p),
        }
    }

    /// Fixed initial condition used by scans.
    pub fn default_start(self) -> f64 {
        match self {
            StepRule::Vrp => 0.5,
            StepRule::FourRats | StepRule::LimitMap => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StepRule::Vrp => "vrp",
            StepRule::FourRats => "four_rats",
            StepRule::LimitMap => "limit_map",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "vrp" => Some(StepRule::Vrp),
            "four_rats" | "four-rats" => Some(StepRule::FourRats),
            "limit_map" | "limit-map" => Some(StepRule::LimitMap),
            _ => None,
        }
    }
}

/// `e^x + α`, computed as `(e^x - 1) + (1 + α)` so that the `α = -1` pole at
/// the origin cancels without rounding noise.
fn shifted_exp(x: f64, alpha: f64) -> f64 {
    x.exp_m1() + (1.0 + alpha)
}

fn check_pole(den: f64, what: &str, x: f64) -> Result<()> {
    if den == 0.0 || den.abs() < 1e-300 {
        Err(Error::Singularity(format!("{what} vanishes at x = {x}")))
    } else {
        Ok(())
    }
}

/// `x^Φ`, with integer exponents evaluated by repeated multiplication so that
/// negative bases stay admissible.
fn power(x: f64, phi: f64) -> Result<f64> {
    if x == 0.0 && phi < 0.0 {
        return Err(Error::Singularity(format!("0^{phi} is undefined")));
    }
    if phi.fract() == 0.0 && phi.abs() < i32::MAX as f64 {
        Ok(x.powi(phi as i32))
    } else if x < 0.0 {
        Err(Error::Domain(format!("non-integer power {phi} of negative base {x}")))
    } else {
        Ok(x.powf(phi))
    }
}

/// One VRP step `q x^Φ/(e^x + α)`.
///
/// Overflow is not an error: the result is then non-finite and callers treat
/// it as divergence.
pub fn vrp_step(x: f64, p: &MapParams) -> Result<f64> {
    let den = shifted_exp(x, p.alpha);
    check_pole(den, "e^x + α", x)?;
    Ok(p.q * power(x, p.phi)? / den)
}

/// `d/dx [q x^Φ/(e^x+α)] = q x^{Φ-1} (Φ(e^x+α) - x e^x)/(e^x+α)²`
pub fn vrp_derivative(x: f64, p: &MapParams) -> Result<f64> {
    let den = shifted_exp(x, p.alpha);
    check_pole(den, "e^x + α", x)?;
    if p.q == 0.0 {
        return Ok(0.0);
    }
    let ex = x.exp();
    Ok(p.q * power(x, p.phi - 1.0)? * (p.phi * den - x * ex) / (den * den))
}

/// One step of the inverse-square ("four rats") recurrence
/// `r ↦ 2 q₁ μ/(r² (e^{μr} + α))`.
pub fn four_rats_step(r: f64, p: &MapParams) -> Result<f64> {
    if r == 0.0 {
        return Err(Error::Singularity("r = 0".into()));
    }
    let den = shifted_exp(p.mu * r, p.alpha);
    check_pole(den, "e^{μr} + α", r)?;
    Ok(2.0 * p.q1 * p.mu / (r * r * den))
}

pub fn four_rats_derivative(r: f64, p: &MapParams) -> Result<f64> {
    let f = four_rats_step(r, p)?;
    Ok(f * (-2.0 / r - p.mu * exp_share(p.mu * r, p.alpha)))
}

/// One step of the combined limit map `y ↦ -2 q₁ μ³/(y² (e^y + α))`.
pub fn limit_map_step(y: f64, p: &MapParams) -> Result<f64> {
    if y == 0.0 {
        return Err(Error::Singularity("y = 0".into()));
    }
    let den = shifted_exp(y, p.alpha);
    check_pole(den, "e^y + α", y)?;
    Ok(-2.0 * p.q1 * p.mu.powi(3) / (y * y * den))
}

pub fn limit_map_derivative(y: f64, p: &MapParams) -> Result<f64> {
    let f = limit_map_step(y, p)?;
    Ok(f * (-2.0 / y - exp_share(y, p.alpha)))
}

/// `e^s/(e^s + α)`, finite for large `s`.
fn exp_share(s: f64, alpha: f64) -> f64 {
    1.0 / (1.0 + alpha * (-s).exp())
}

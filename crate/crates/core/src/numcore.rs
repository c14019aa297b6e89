//! Shared numerical kernels: periodic quadrature, central difference
//! stencils, the closed-form contour-moment oracle and a platform-stable
//! seeded sampler.

use std::f64::consts::TAU;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Uniform grid of `node_count` angles `2πj/node_count`, `j = 0..node_count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodicGrid {
    node_count: usize,
}

impl PeriodicGrid {
    pub const MIN_NODES: usize = 4;

    pub fn new(node_count: usize) -> Result<Self> {
        if node_count < Self::MIN_NODES {
            return Err(Error::Size(format!(
                "periodic grid needs at least {} nodes, got {node_count}",
                Self::MIN_NODES
            )));
        }
        Ok(Self { node_count })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn spacing(&self) -> f64 {
        TAU / self.node_count as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        TAU * j as f64 / self.node_count as f64
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.node_count).map(move |j| self.node(j))
    }
}

impl Default for PeriodicGrid {
    /// 4096 nodes: Gram entries are exact to near machine precision for
    /// `|α| ≤ 0.5` and basis indices up to 32.
    fn default() -> Self {
        Self { node_count: 4096 }
    }
}

/// Mixed absolute/relative comparison tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub absolute: f64,
    pub relative: f64,
}

impl Tolerance {
    pub fn new(absolute: f64, relative: f64) -> Result<Self> {
        let valid = |v: f64| v.is_finite() && v >= 0.0;
        if !valid(absolute) || !valid(relative) || (absolute == 0.0 && relative == 0.0) {
            return Err(Error::Domain(format!(
                "tolerance needs non-negative parts with at least one positive, got ({absolute}, {relative})"
            )));
        }
        Ok(Self { absolute, relative })
    }

    pub fn absolute(absolute: f64) -> Result<Self> {
        Self::new(absolute, 0.0)
    }

    /// `|a - b| <= absolute + relative * max(|a|, |b|)`
    pub fn accepts(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.absolute + self.relative * a.abs().max(b.abs())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            absolute: 1e-10,
            relative: 1e-8,
        }
    }
}

/// Rectangle rule over one period: `spacing * Σ f(θ_j)`.
///
/// For smooth 2π-periodic integrands this is spectrally accurate; a
/// trigonometric polynomial of degree below `node_count / 2` is integrated
/// exactly up to rounding.
pub fn quad_periodic<F>(evaluate: F, grid: &PeriodicGrid) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let mut sum = Complex64::new(0.0, 0.0);
    for (j, theta) in grid.nodes().enumerate() {
        let value = evaluate(theta);
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::Domain(format!(
                "integrand is not finite at node {j} (θ = {theta})"
            )));
        }
        sum += value;
    }
    Ok(sum * grid.spacing())
}

/// Derivative order for [`fd_apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Derivative {
    First,
    Second,
}

/// Central second-order stencil applied at interior nodes.
///
/// The output has `samples.len() - 2` entries; entry `k` approximates the
/// derivative at node `k + 1`.
pub fn fd_apply<T>(samples: &[T], spacing: f64, order: Derivative) -> Result<Vec<T>>
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
{
    if samples.len() < 5 {
        return Err(Error::Size(format!(
            "finite differences need at least 5 samples, got {}",
            samples.len()
        )));
    }
    if !(spacing > 0.0 && spacing.is_finite()) {
        return Err(Error::Domain(format!("spacing must be positive, got {spacing}")));
    }
    let out = match order {
        Derivative::First => {
            let scale = 0.5 / spacing;
            samples.windows(3).map(|w| (w[2] - w[0]) * scale).collect()
        }
        Derivative::Second => {
            let scale = 1.0 / (spacing * spacing);
            samples
                .windows(3)
                .map(|w| (w[2] - w[1] - (w[1] - w[0])) * scale)
                .collect()
        }
    };
    Ok(out)
}

/// Closed form of `∫₀^{2π} ((1-α²)/(e^{-iθ}+α))^k dθ`.
///
/// With `z = e^{iθ}` the integrand becomes `(1-α²)^k z^k/(1+αz)^k`, whose only
/// pole `z = -1/α` lies outside the unit circle. Non-negative `k` leaves the
/// residue at the origin only for `k = 0`; for `k = -j` the residue is the
/// `z^j` coefficient of `(1+αz)^j`, which gives `2π (α/(1-α²))^j`.
pub fn contour_moment_oracle(k: i32, alpha: f64) -> Result<Complex64> {
    if !(alpha.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "|α| must be below 1 (pole on or inside the unit circle), got {alpha}"
        )));
    }
    let value = match k {
        0 => TAU,
        k if k > 0 => 0.0,
        k => TAU * (alpha / (1.0 - alpha * alpha)).powi(-k),
    };
    Ok(Complex64::new(value, 0.0))
}

/// Deterministic uniform reals in `[low, high)`.
///
/// The stream is ChaCha8 seeded through `seed_from_u64`; each draw takes the
/// top 53 bits of one `u64` word, so the sequence is identical on every
/// platform. For `seed = 1` on `[0, 1)` the first three values are
/// `0.40248566366484806`, `0.08038370892978197`, `0.5965601809348549`.
pub fn seeded_sampler(seed: u64, low: f64, high: f64, count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::Size("sample count must be at least 1".into()));
    }
    if !(low < high) || !low.is_finite() || !high.is_finite() {
        return Err(Error::Domain(format!("need finite low < high, got [{low}, {high})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(|_| uniform(&mut rng, low, high)).collect())
}

pub(crate) fn uniform<R: RngCore>(rng: &mut R, low: f64, high: f64) -> f64 {
    let unit = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    let x = low + (high - low) * unit;
    // rounding in the affine map can land exactly on `high`
    if x < high {
        x
    } else {
        low
    }
}

/// Principal complex logarithm, imaginary part in `(-π, π]`.
pub fn principal_ln(z: Complex64) -> Complex64 {
    Complex64::new(z.norm().ln(), z.arg())
}

/// Maps an angle into `[0, 2π)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let w = theta.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Distance between two angles on the circle.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Least-squares slope of `ln(y)` against `ln(x)`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len().min(y.len()) as f64;
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let (mut num, mut den) = (0.0, 0.0);
    for (a, b) in lx.iter().zip(&ly) {
        num += (a - mx) * (b - my);
        den += (a - mx) * (a - mx);
    }
    num / den
}

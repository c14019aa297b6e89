//! The modified Klein–Gordon–Fock (m-KGF) operator
//! `(1 + αe^{-μx})□ + 2μ^k∂_k + μ²`, its exact solutions and the
//! variational checks around it.
//!
//! Conventions: signature `(+,-,-,-)`, `mu_vec` holds the contravariant
//! components `μ^k`, so `μx = μ^0 x^0 - μ^1 x^1 - μ^2 x^2 - μ^3 x^3` and
//! `μ^k∂_k = μ^0∂_t + μ^1∂_x + …`. Two-dimensional checks live on the `(t, x)`
//! slice with `□ = ∂_t² - ∂_x²`.

mod residual;
mod solutions;
mod variational;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numcore::log_log_slope;

pub use residual::{
    ode_residual_1d, ode_residual_1d_with, pde_residual_2d, pde_residual_2d_with, spherical_residual,
    spherical_residual_with,
};
pub use solutions::{mkgf_exact_solution, modified_yukawa, wave_solution};
pub use variational::{
    el_vs_operator_check, lagrangian_density, self_adjointness_defect, self_adjointness_ladder, test_field,
    windowed_test_field, AdjointVersion,
};

/// Default refinement ladder, nodes per axis.
pub const DEFAULT_LADDER: [usize; 3] = [129, 257, 513];

/// Default `(t, x)` box for two-dimensional checks.
pub const DEFAULT_EXTENTS: [[f64; 2]; 2] = [[-1.0, 1.0], [-1.0, 1.0]];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldParams {
    pub mu_vec: [f64; 4],
    pub alpha: f64,
}

impl FieldParams {
    pub fn new(mu_vec: [f64; 4], alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || mu_vec.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("field parameters must be finite".into()));
        }
        Ok(Self { mu_vec, alpha })
    }

    /// `μ = (mu, 0, 0, 0)`
    pub fn at_rest(mu: f64, alpha: f64) -> Result<Self> {
        Self::new([mu, 0.0, 0.0, 0.0], alpha)
    }

    /// `μ = (mu0, mu1, 0, 0)`
    pub fn slice(mu0: f64, mu1: f64, alpha: f64) -> Result<Self> {
        Self::new([mu0, mu1, 0.0, 0.0], alpha)
    }

    /// `μ_kμ^k`
    pub fn mass_squared(&self) -> f64 {
        let [a, b, c, d] = self.mu_vec;
        a * a - b * b - c * c - d * d
    }

    /// `sign(μ^0) √(μ_kμ^k)`; the sign follows `μ → -μ`.
    pub fn mass(&self) -> Result<f64> {
        let m2 = self.mass_squared();
        if !(m2 > 0.0) {
            return Err(Error::Domain(format!("μ_kμ^k must be positive, got {m2}")));
        }
        Ok(m2.sqrt().copysign(self.mu_vec[0]))
    }

    /// `μx` for a 4-point `x`.
    pub fn dot(&self, x: [f64; 4]) -> f64 {
        let m = self.mu_vec;
        m[0] * x[0] - m[1] * x[1] - m[2] * x[2] - m[3] * x[3]
    }

    /// `(μ^0, μ^1)`, rejecting parameters with transverse components.
    pub(crate) fn slice_components(&self) -> Result<(f64, f64)> {
        if self.mu_vec[2] != 0.0 || self.mu_vec[3] != 0.0 {
            return Err(Error::Domain(format!(
                "μ must lie in the (t, x) plane, got {:?}",
                self.mu_vec
            )));
        }
        Ok((self.mu_vec[0], self.mu_vec[1]))
    }

    pub fn negated(&self) -> Self {
        Self {
            mu_vec: self.mu_vec.map(|v| -v),
            alpha: self.alpha,
        }
    }
}

/// Field samples on a uniform 1-D or 2-D grid, row-major with axis 0 slowest.
///
/// Non-finite samples mark singular nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    pub extents: Vec<[f64; 2]>,
    pub node_counts: Vec<usize>,
    pub samples: Vec<Complex64>,
}

impl FieldGrid {
    pub const MIN_NODES: usize = 8;

    fn check_axis(extent: [f64; 2], count: usize) -> Result<()> {
        if count < Self::MIN_NODES {
            return Err(Error::Size(format!(
                "need at least {} nodes per axis, got {count}",
                Self::MIN_NODES
            )));
        }
        if !(extent[0] < extent[1]) || !extent[1].is_finite() || !extent[0].is_finite() {
            return Err(Error::Domain(format!("invalid extent {extent:?}")));
        }
        Ok(())
    }

    pub fn sample_1d<F>(extent: [f64; 2], count: usize, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Complex64,
    {
        Self::check_axis(extent, count)?;
        let h = (extent[1] - extent[0]) / (count - 1) as f64;
        let samples = (0..count).map(|i| f(extent[0] + i as f64 * h)).collect();
        Ok(Self {
            extents: vec![extent],
            node_counts: vec![count],
            samples,
        })
    }

    pub fn sample_2d<F>(extents: [[f64; 2]; 2], counts: [usize; 2], f: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> Complex64,
    {
        Self::check_axis(extents[0], counts[0])?;
        Self::check_axis(extents[1], counts[1])?;
        let mut grid = Self {
            extents: extents.to_vec(),
            node_counts: counts.to_vec(),
            samples: Vec::with_capacity(counts[0] * counts[1]),
        };
        for i in 0..counts[0] {
            let t = grid.coordinate(0, i);
            for j in 0..counts[1] {
                let x = grid.coordinate(1, j);
                grid.samples.push(f(t, x));
            }
        }
        Ok(grid)
    }

    pub fn dimension(&self) -> usize {
        self.node_counts.len()
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        let [lo, hi] = self.extents[axis];
        (hi - lo) / (self.node_counts[axis] - 1) as f64
    }

    pub fn coordinate(&self, axis: usize, i: usize) -> f64 {
        self.extents[axis][0] + i as f64 * self.spacing(axis)
    }

    pub fn singular_count(&self) -> usize {
        self.samples.iter().filter(|z| !is_finite(**z)).count()
    }
}

pub(crate) fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Convergence record of a residual (or defect) over a refinement ladder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub spacings: Vec<f64>,
    /// Max-norm over the interior, singular nodes excluded. The interior is
    /// the same physical region on every grid: nodes at least one coarsest
    /// spacing away from the boundary.
    pub residual_norms: Vec<f64>,
    /// Interior nodes excluded per grid.
    pub excluded_nodes: Vec<usize>,
    /// Least-squares slope of `ln residual` against `ln spacing`.
    pub fitted_order: f64,
}

impl ResidualReport {
    pub fn from_levels(spacings: Vec<f64>, residual_norms: Vec<f64>, excluded_nodes: Vec<usize>) -> Self {
        let fitted_order = log_log_slope(&spacings, &residual_norms);
        Self {
            spacings,
            residual_norms,
            excluded_nodes,
            fitted_order,
        }
    }

    /// Coarsest over finest residual.
    pub fn reduction_factor(&self) -> f64 {
        self.residual_norms[0] / self.residual_norms[self.residual_norms.len() - 1]
    }

    pub fn finest(&self) -> f64 {
        self.residual_norms[self.residual_norms.len() - 1]
    }
}

pub(crate) fn check_ladder(node_counts: &[usize], minimum: usize) -> Result<()> {
    if node_counts.len() < 2 {
        return Err(Error::Size("a refinement ladder needs at least two grids".into()));
    }
    if node_counts.iter().any(|&n| n < minimum) {
        return Err(Error::Size(format!("every grid needs at least {minimum} nodes, got {node_counts:?}")));
    }
    if node_counts.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Size(format!("node counts must increase, got {node_counts:?}")));
    }
    Ok(())
}

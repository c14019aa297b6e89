//! The density `L = (α + e^{±μx}) ∂_nU ∂^nU* - μ²|U|² e^{±μx}`, its
//! Euler–Lagrange operator and the self-adjointness defects of the two
//! competing operators.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numcore::{seeded_sampler, Derivative};

use super::residual::{axis_derivative, interior_max, margin_nodes, run_ladder};
use super::{check_ladder, FieldGrid, FieldParams, ResidualReport};

const MODES: usize = 6;
const MAX_WAVENUMBER: f64 = 3.0;

fn check_sign(sign: i32) -> Result<f64> {
    match sign {
        1 => Ok(1.0),
        -1 => Ok(-1.0),
        _ => Err(Error::Domain(format!("sign must be +1 or -1, got {sign}"))),
    }
}

/// Evaluates the density at one point. `grad_u` holds the covariant
/// derivatives `∂_n U`.
pub fn lagrangian_density(u: Complex64, grad_u: [Complex64; 4], x: [f64; 4], p: &FieldParams, sign: i32) -> Result<f64> {
    let sigma = check_sign(sign)?;
    let e = (sigma * p.dot(x)).exp();
    let kinetic = grad_u[0].norm_sqr() - grad_u[1].norm_sqr() - grad_u[2].norm_sqr() - grad_u[3].norm_sqr();
    Ok((p.alpha + e) * kinetic - p.mass_squared() * u.norm_sqr() * e)
}

/// Sum of a few plane waves with seeded complex amplitudes and wave vectors,
/// optionally under a Gaussian window.
#[derive(Debug, Clone, PartialEq)]
pub struct TestField {
    amplitudes: Vec<Complex64>,
    wave_vectors: Vec<[f64; 2]>,
    window: Option<([f64; 2], f64)>,
    real: bool,
}

impl TestField {
    pub fn eval(&self, t: f64, x: f64) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for (a, k) in self.amplitudes.iter().zip(&self.wave_vectors) {
            let phase = k[0] * t + k[1] * x;
            sum += if self.real {
                Complex64::new(a.re * (phase + a.im * std::f64::consts::PI).cos(), 0.0)
            } else {
                a * Complex64::from_polar(1.0, phase)
            };
        }
        match self.window {
            Some((c, width)) => {
                let r2 = (t - c[0]).powi(2) + (x - c[1]).powi(2);
                sum * (-r2 / (2.0 * width * width)).exp()
            }
            None => sum,
        }
    }
}

/// Band-limited complex field `Σ A_k e^{i(a_k t + b_k x)}`.
pub fn test_field(seed: u64) -> Result<TestField> {
    let draws = seeded_sampler(seed, -1.0, 1.0, 4 * MODES)?;
    Ok(TestField {
        amplitudes: draws.chunks_exact(4).map(|d| Complex64::new(d[0], d[1])).collect(),
        wave_vectors: draws.chunks_exact(4).map(|d| [MAX_WAVENUMBER * d[2], MAX_WAVENUMBER * d[3]]).collect(),
        window: None,
        real: false,
    })
}

/// Real band-limited field under a Gaussian window centred in `extents`,
/// negligible (below 1e-9) on the boundary.
pub fn windowed_test_field(seed: u64, extents: [[f64; 2]; 2]) -> Result<TestField> {
    let mut f = test_field(seed)?;
    let centre = [0.5 * (extents[0][0] + extents[0][1]), 0.5 * (extents[1][0] + extents[1][1])];
    let half = (extents[0][1] - extents[0][0]).min(extents[1][1] - extents[1][0]) / 2.0;
    f.window = Some((centre, 0.15 * half));
    f.real = true;
    Ok(f)
}

/// Compares the discrete Euler–Lagrange expression of the density with the
/// weighted operator `e^{±μx}[(1 + αe^{∓μx})□U ± μ^n∂_nU + μ²U]`.
///
/// The Euler–Lagrange side is the variation of the discrete action, i.e. the
/// flux form `D_t(w D_t U) - D_x(w D_x U) + μ²e^{±μx}U` with
/// `w = α + e^{±μx}` taken at half nodes. The operator side uses central
/// differences. Both are second order, so their difference converges at
/// order 2; for `μ = 0` they coincide to rounding.
pub fn el_vs_operator_check(
    p: &FieldParams,
    sign: i32,
    seed: u64,
    extents: [[f64; 2]; 2],
    node_counts: &[usize],
) -> Result<ResidualReport> {
    let sigma = check_sign(sign)?;
    check_ladder(node_counts, FieldGrid::MIN_NODES)?;
    let (mu0, mu1) = p.slice_components()?;
    let m2 = p.mass_squared();
    let field = test_field(seed)?;
    let w = |t: f64, x: f64| p.alpha + (sigma * (mu0 * t - mu1 * x)).exp();
    run_ladder(node_counts, |n| {
        let grid = FieldGrid::sample_2d(extents, [n, n], |t, x| field.eval(t, x))?;
        let (ht, hx) = (grid.spacing(0), grid.spacing(1));
        let tt = axis_derivative(&grid, 0, Derivative::Second)?;
        let xx = axis_derivative(&grid, 1, Derivative::Second)?;
        let t1 = axis_derivative(&grid, 0, Derivative::First)?;
        let x1 = axis_derivative(&grid, 1, Derivative::First)?;
        let u = &grid.samples;
        let mut diff = vec![Complex64::new(f64::NAN, 0.0); u.len()];
        for i in 1..n - 1 {
            let t = grid.coordinate(0, i);
            for j in 1..n - 1 {
                let x = grid.coordinate(1, j);
                let k = i * n + j;
                let e = (sigma * (mu0 * t - mu1 * x)).exp();
                let flux_t = w(t + ht / 2.0, x) * (u[k + n] - u[k]) - w(t - ht / 2.0, x) * (u[k] - u[k - n]);
                let flux_x = w(t, x + hx / 2.0) * (u[k + 1] - u[k]) - w(t, x - hx / 2.0) * (u[k] - u[k - 1]);
                let el = flux_t / (ht * ht) - flux_x / (hx * hx) + m2 * e * u[k];
                let op = e
                    * ((1.0 + p.alpha / e) * (tt[k] - xx[k]) + sigma * (mu0 * t1[k] + mu1 * x1[k]) + m2 * u[k]);
                diff[k] = el - op;
            }
        }
        let (worst, skipped) = interior_max(&diff, &grid.node_counts, margin_nodes(node_counts[0], n));
        Ok((ht, worst, skipped))
    })
}

/// The two operators compared by the self-adjointness test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdjointVersion {
    /// `(1 + αe^{-μx})□ + 2μ^n∂_n + μ²` under the plain pairing.
    Coefficient2,
    /// `(1 + αe^{-μx})□ + μ^n∂_n + μ²` under the `e^{μx}`-weighted pairing.
    Coefficient1Weighted,
}

impl AdjointVersion {
    pub fn name(self) -> &'static str {
        match self {
            AdjointVersion::Coefficient2 => "coefficient2",
            AdjointVersion::Coefficient1Weighted => "coefficient1_weighted",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "coefficient2" => Some(AdjointVersion::Coefficient2),
            "coefficient1_weighted" => Some(AdjointVersion::Coefficient1Weighted),
            _ => None,
        }
    }
}

/// `|⟨v, Lu⟩ - ⟨u, Lv⟩|` on one `n × n` grid, summed over interior nodes.
pub fn self_adjointness_defect(
    p: &FieldParams,
    version: AdjointVersion,
    u_seed: u64,
    v_seed: u64,
    extents: [[f64; 2]; 2],
    node_count: usize,
) -> Result<f64> {
    let (mu0, mu1) = p.slice_components()?;
    let (first_order, weighted) = match version {
        AdjointVersion::Coefficient2 => (2.0, false),
        AdjointVersion::Coefficient1Weighted => (1.0, true),
    };
    let fu = windowed_test_field(u_seed, extents)?;
    let fv = windowed_test_field(v_seed, extents)?;
    let n = node_count;
    let gu = FieldGrid::sample_2d(extents, [n, n], |t, x| fu.eval(t, x))?;
    let gv = FieldGrid::sample_2d(extents, [n, n], |t, x| fv.eval(t, x))?;
    let apply = |g: &FieldGrid| -> Result<Vec<f64>> {
        let tt = axis_derivative(g, 0, Derivative::Second)?;
        let xx = axis_derivative(g, 1, Derivative::Second)?;
        let t1 = axis_derivative(g, 0, Derivative::First)?;
        let x1 = axis_derivative(g, 1, Derivative::First)?;
        Ok((0..g.samples.len())
            .map(|k| {
                let s = mu0 * g.coordinate(0, k / n) - mu1 * g.coordinate(1, k % n);
                ((1.0 + p.alpha * (-s).exp()) * (tt[k] - xx[k])
                    + first_order * (mu0 * t1[k] + mu1 * x1[k])
                    + p.mass_squared() * g.samples[k])
                    .re
            })
            .collect())
    };
    let (lu, lv) = (apply(&gu)?, apply(&gv)?);
    let mut pairing = 0.0;
    for i in 1..n - 1 {
        for j in 1..n - 1 {
            let k = i * n + j;
            let weight = if weighted {
                (mu0 * gu.coordinate(0, i) - mu1 * gu.coordinate(1, j)).exp()
            } else {
                1.0
            };
            pairing += weight * (gv.samples[k].re * lu[k] - gu.samples[k].re * lv[k]);
        }
    }
    Ok((pairing * gu.spacing(0) * gu.spacing(1)).abs())
}

/// [`self_adjointness_defect`] over a refinement ladder; `residual_norms`
/// holds the defects.
pub fn self_adjointness_ladder(
    p: &FieldParams,
    version: AdjointVersion,
    u_seed: u64,
    v_seed: u64,
    extents: [[f64; 2]; 2],
    node_counts: &[usize],
) -> Result<ResidualReport> {
    check_ladder(node_counts, FieldGrid::MIN_NODES)?;
    let defects = node_counts
        .par_iter()
        .map(|&n| self_adjointness_defect(p, version, u_seed, v_seed, extents, n))
        .collect::<Result<Vec<_>>>()?;
    let spacings = node_counts
        .iter()
        .map(|&n| (extents[0][1] - extents[0][0]) / (n - 1) as f64)
        .collect();
    Ok(ResidualReport::from_levels(spacings, defects, vec![0; node_counts.len()]))
}

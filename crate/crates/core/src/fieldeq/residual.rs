//! Discretized operators applied to exact solutions over refinement ladders.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numcore::{fd_apply, Derivative};

use super::{check_ladder, is_finite, modified_yukawa, FieldGrid, FieldParams, ResidualReport};

const NAN: Complex64 = Complex64::new(f64::NAN, f64::NAN);

/// Derivative along one axis of a 1-D or 2-D grid; entries on that axis'
/// boundary are NaN.
pub(crate) fn axis_derivative(grid: &FieldGrid, axis: usize, order: Derivative) -> Result<Vec<Complex64>> {
    if axis >= grid.dimension() {
        return Err(Error::Domain(format!("no axis {axis} on a {}-D grid", grid.dimension())));
    }
    let h = grid.spacing(axis);
    let mut out = vec![NAN; grid.samples.len()];
    match (grid.dimension(), axis) {
        (1, 0) => {
            let d = fd_apply(&grid.samples, h, order)?;
            out[1..grid.samples.len() - 1].copy_from_slice(&d);
        }
        (2, 0) => {
            let (nt, nx) = (grid.node_counts[0], grid.node_counts[1]);
            let mut line = vec![NAN; nt];
            for j in 0..nx {
                for (i, v) in line.iter_mut().enumerate() {
                    *v = grid.samples[i * nx + j];
                }
                for (i, v) in fd_apply(&line, h, order)?.into_iter().enumerate() {
                    out[(i + 1) * nx + j] = v;
                }
            }
        }
        (2, 1) => {
            let nx = grid.node_counts[1];
            for (row_in, row_out) in grid.samples.chunks_exact(nx).zip(out.chunks_exact_mut(nx)) {
                row_out[1..nx - 1].copy_from_slice(&fd_apply(row_in, h, order)?);
            }
        }
        _ => return Err(Error::Domain(format!("no axis {axis} on a {}-D grid", grid.dimension()))),
    }
    Ok(out)
}

/// Max-norm over nodes at least `skip` nodes from every boundary, and the
/// number of those nodes skipped because the value there is not finite.
pub(crate) fn interior_max(values: &[Complex64], node_counts: &[usize], skip: usize) -> (f64, usize) {
    let mut worst: f64 = 0.0;
    let mut skipped = 0;
    let mut visit = |z: Complex64| {
        if is_finite(z) {
            worst = worst.max(z.norm());
        } else {
            skipped += 1;
        }
    };
    match node_counts {
        [n] => values[skip..n - skip].iter().copied().for_each(&mut visit),
        [nt, nx] => {
            for i in skip..nt - skip {
                values[i * nx + skip..(i + 1) * nx - skip].iter().copied().for_each(&mut visit);
            }
        }
        _ => unreachable!("grids are 1-D or 2-D"),
    }
    (worst, skipped)
}

/// Boundary margin, in nodes, that keeps every grid of a ladder on the same
/// physical interior: one spacing of the coarsest grid.
pub(crate) fn margin_nodes(coarsest: usize, n: usize) -> usize {
    let ratio = (n - 1) as f64 / (coarsest - 1) as f64;
    (ratio - 1e-9).ceil().max(1.0) as usize
}

/// Runs `level` on every ladder entry in parallel and assembles the report
/// in ladder order.
pub(crate) fn run_ladder<F>(node_counts: &[usize], level: F) -> Result<ResidualReport>
where
    F: Fn(usize) -> Result<(f64, f64, usize)> + Sync,
{
    let levels = node_counts.par_iter().map(|&n| level(n)).collect::<Result<Vec<_>>>()?;
    let mut spacings = Vec::with_capacity(levels.len());
    let mut norms = Vec::with_capacity(levels.len());
    let mut excluded = Vec::with_capacity(levels.len());
    for (h, r, skipped) in levels {
        spacings.push(h);
        norms.push(r);
        excluded.push(skipped);
    }
    Ok(ResidualReport::from_levels(spacings, norms, excluded))
}

/// `((1 + αe^{-iμz})∂_z² + 2iμ∂_z - μ²)ψ` for the partial wave.
pub fn ode_residual_1d(p: &FieldParams, z_range: [f64; 2], node_counts: &[usize]) -> Result<ResidualReport> {
    let psi0 = Complex64::new(1.0, 0.0);
    ode_residual_1d_with(p, z_range, node_counts, |z| {
        super::wave_solution(z, psi0, p).unwrap_or(NAN)
    })
}

/// As [`ode_residual_1d`] for an arbitrary trial field.
pub fn ode_residual_1d_with<F>(p: &FieldParams, z_range: [f64; 2], node_counts: &[usize], psi: F) -> Result<ResidualReport>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    check_ladder(node_counts, 64)?;
    let mu = p.mass()?;
    let i = Complex64::i();
    run_ladder(node_counts, |n| {
        let grid = FieldGrid::sample_1d(z_range, n, &psi)?;
        let d1 = axis_derivative(&grid, 0, Derivative::First)?;
        let d2 = axis_derivative(&grid, 0, Derivative::Second)?;
        let res: Vec<Complex64> = (0..n)
            .map(|k| {
                let z = grid.coordinate(0, k);
                let coeff = 1.0 + p.alpha * Complex64::from_polar(1.0, -mu * z);
                coeff * d2[k] + 2.0 * i * mu * d1[k] - mu * mu * grid.samples[k]
            })
            .collect();
        let (worst, skipped) = interior_max(&res, &grid.node_counts, margin_nodes(node_counts[0], n));
        Ok((grid.spacing(0), worst, skipped))
    })
}

/// The m-KGF operator applied to `1/(e^{μx} + α)` on a `(t, x)` slice.
pub fn pde_residual_2d(p: &FieldParams, extents: [[f64; 2]; 2], node_counts: &[usize]) -> Result<ResidualReport> {
    pde_residual_2d_with(p, extents, node_counts, |t, x| {
        super::mkgf_exact_solution([t, x, 0.0, 0.0], p)
            .map(|v| Complex64::new(v, 0.0))
            .unwrap_or(NAN)
    })
}

/// As [`pde_residual_2d`] for an arbitrary trial field.
pub fn pde_residual_2d_with<F>(
    p: &FieldParams,
    extents: [[f64; 2]; 2],
    node_counts: &[usize],
    phi: F,
) -> Result<ResidualReport>
where
    F: Fn(f64, f64) -> Complex64 + Sync,
{
    check_ladder(node_counts, FieldGrid::MIN_NODES)?;
    let (mu0, mu1) = p.slice_components()?;
    let m2 = p.mass_squared();
    if !(m2 > 0.0) {
        return Err(Error::Domain(format!("μ_kμ^k must be positive, got {m2}")));
    }
    run_ladder(node_counts, |n| {
        let grid = FieldGrid::sample_2d(extents, [n, n], &phi)?;
        let tt = axis_derivative(&grid, 0, Derivative::Second)?;
        let xx = axis_derivative(&grid, 1, Derivative::Second)?;
        let t1 = axis_derivative(&grid, 0, Derivative::First)?;
        let x1 = axis_derivative(&grid, 1, Derivative::First)?;
        let res: Vec<Complex64> = (0..grid.samples.len())
            .map(|k| {
                let (t, x) = (grid.coordinate(0, k / n), grid.coordinate(1, k % n));
                let s = mu0 * t - mu1 * x;
                let coeff = 1.0 + p.alpha * (-s).exp();
                (tt[k] - xx[k]) * coeff + 2.0 * (mu0 * t1[k] + mu1 * x1[k]) + m2 * grid.samples[k]
            })
            .collect();
        let (worst, skipped) = interior_max(&res, &grid.node_counts, margin_nodes(node_counts[0], n));
        Ok((grid.spacing(0), worst, skipped))
    })
}

/// Sourced radial equation
/// `(1 + αe^{-μr}) ∂²(rφ)/(r∂r²) + 2μ ∂(r²φ)/(r²∂r) + μ²φ = 2q₁μ/(r²(e^{μr} + α))`
/// for the modified Yukawa potential with `c0 = -q₁`.
pub fn spherical_residual(p: &FieldParams, q1: f64, r_range: [f64; 2], node_counts: &[usize]) -> Result<ResidualReport> {
    spherical_residual_with(p, q1, -q1, r_range, node_counts)
}

/// As [`spherical_residual`] with an explicit potential constant `c0`.
pub fn spherical_residual_with(
    p: &FieldParams,
    q1: f64,
    c0: f64,
    r_range: [f64; 2],
    node_counts: &[usize],
) -> Result<ResidualReport> {
    if !(r_range[0] > 0.0) {
        return Err(Error::Domain(format!("radial range must exclude r ≤ 0, got {r_range:?}")));
    }
    check_ladder(node_counts, FieldGrid::MIN_NODES)?;
    let mu = p.mass()?;
    let alpha = p.alpha;
    run_ladder(node_counts, |n| {
        let h = (r_range[1] - r_range[0]) / (n - 1) as f64;
        let r: Vec<f64> = (0..n).map(|k| r_range[0] + k as f64 * h).collect();
        let phi = r
            .iter()
            .map(|&r| modified_yukawa(r, c0, p).unwrap_or(f64::NAN))
            .collect::<Vec<_>>();
        let r_phi: Vec<f64> = r.iter().zip(&phi).map(|(r, v)| r * v).collect();
        let r2_phi: Vec<f64> = r.iter().zip(&phi).map(|(r, v)| r * r * v).collect();
        let d2 = fd_apply(&r_phi, h, Derivative::Second)?;
        let d1 = fd_apply(&r2_phi, h, Derivative::First)?;
        let mut res = vec![NAN; n];
        for k in 1..n - 1 {
            let rk = r[k];
            let lhs = (1.0 + alpha * (-mu * rk).exp()) * d2[k - 1] / rk + 2.0 * mu * d1[k - 1] / (rk * rk) + mu * mu * phi[k];
            let rhs = 2.0 * q1 * mu / (rk * rk * ((mu * rk).exp_m1() + 1.0 + alpha));
            res[k] = Complex64::new(lhs - rhs, 0.0);
        }
        let (worst, skipped) = interior_max(&res, &[n], margin_nodes(node_counts[0], n));
        Ok((h, worst, skipped))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldeq::{DEFAULT_EXTENTS, DEFAULT_LADDER};
    use std::f64::consts::TAU;

    fn in_band(order: f64, lo: f64, hi: f64) -> bool {
        (lo..=hi).contains(&order)
    }

    #[test]
    fn axis_derivative_of_product() {
        let g = FieldGrid::sample_2d([[0.0, 1.0], [0.0, 1.0]], [9, 9], |t, x| Complex64::new(t * t * x, 0.0)).unwrap();
        let tt = axis_derivative(&g, 0, Derivative::Second).unwrap();
        let x1 = axis_derivative(&g, 1, Derivative::First).unwrap();
        // interior node (3, 5)
        assert!((tt[3 * 9 + 5].re - 2.0 * 0.625).abs() < 1e-12);
        assert!((x1[3 * 9 + 5].re - 0.375f64.powi(2)).abs() < 1e-12);
        assert!(tt[4].re.is_nan());
        assert!(axis_derivative(&g, 2, Derivative::First).is_err());
    }

    #[test]
    fn ode_partial_wave_converges() {
        let p = FieldParams::at_rest(1.0, 0.3).unwrap();
        let r = ode_residual_1d(&p, [0.0, TAU], &[256, 512, 1024]).unwrap();
        assert!(in_band(r.fitted_order, 1.9, 2.1), "{r:?}");
        for w in r.residual_norms.windows(2) {
            assert!((3.5..4.5).contains(&(w[0] / w[1])), "{r:?}");
        }
    }

    #[test]
    fn ode_plane_wave_leaves_only_truncation_error() {
        let p = FieldParams::at_rest(1.0, 0.0).unwrap();
        let r = ode_residual_1d(&p, [0.0, TAU], &DEFAULT_LADDER).unwrap();
        // the discrete operator leaves μ⁴h²/4 on e^{-iμz}
        for (h, v) in r.spacings.iter().zip(&r.residual_norms) {
            assert!((v / (h * h / 4.0) - 1.0).abs() < 1e-2, "{r:?}");
        }
    }

    #[test]
    fn ode_negative_control() {
        let p = FieldParams::at_rest(1.3, 0.3).unwrap();
        let r = ode_residual_1d_with(&p, [0.0, TAU], &DEFAULT_LADDER, |_| Complex64::new(1.0, 0.0)).unwrap();
        for v in &r.residual_norms {
            assert!((v - 1.69).abs() < 1e-12);
        }
        assert!(r.fitted_order.abs() < 1e-10);
    }

    #[test]
    fn pde_exact_solution_converges() {
        let p = FieldParams::slice(2f64.sqrt(), 1.0, 0.3).unwrap();
        let r = pde_residual_2d(&p, DEFAULT_EXTENTS, &DEFAULT_LADDER).unwrap();
        assert!(in_band(r.fitted_order, 1.9, 2.1), "{r:?}");
        let neg = p.negated();
        let r = pde_residual_2d(&neg, DEFAULT_EXTENTS, &DEFAULT_LADDER).unwrap();
        assert!(in_band(r.fitted_order, 1.9, 2.1), "{r:?}");
    }

    #[test]
    fn pde_classical_exponential_and_control() {
        let p = FieldParams::slice(2f64.sqrt(), 1.0, 0.0).unwrap();
        let (mu0, mu1) = (2f64.sqrt(), 1.0);
        let decaying = |t: f64, x: f64| Complex64::new((-(mu0 * t - mu1 * x)).exp(), 0.0);
        let r = pde_residual_2d_with(&p, DEFAULT_EXTENTS, &DEFAULT_LADDER, decaying).unwrap();
        assert!(in_band(r.fitted_order, 1.9, 2.1), "{r:?}");
        let growing = |t: f64, x: f64| Complex64::new((mu0 * t - mu1 * x).exp(), 0.0);
        let r = pde_residual_2d_with(&p, DEFAULT_EXTENTS, &DEFAULT_LADDER, growing).unwrap();
        assert!(r.finest() > 1.0, "{r:?}");
        assert!(r.fitted_order.abs() < 0.05);
    }

    #[test]
    fn spherical_source_identity() {
        for alpha in [1.0 / 137.0, 0.0] {
            let p = FieldParams::at_rest(1.0, alpha).unwrap();
            let r = spherical_residual(&p, 1.0, [0.1, 10.0], &DEFAULT_LADDER).unwrap();
            assert!(in_band(r.fitted_order, 1.9, 2.1), "{r:?}");
            let wrong = spherical_residual_with(&p, 1.0, 1.0, [0.1, 10.0], &DEFAULT_LADDER).unwrap();
            // the wrong sign leaves twice the source, 2·2q₁μ/(r²(e^{μr}+α)) at the first interior node
            assert!(wrong.finest() > 100.0, "{wrong:?}");
        }
        let p = FieldParams::at_rest(1.0, 0.0).unwrap();
        assert!(spherical_residual(&p, 1.0, [0.0, 10.0], &DEFAULT_LADDER).is_err());
    }

    #[test]
    fn negated_mass_keeps_contracts() {
        let p = FieldParams::at_rest(-1.0, 0.3).unwrap();
        let r = ode_residual_1d(&p, [0.0, TAU], &DEFAULT_LADDER).unwrap();
        assert!(in_band(r.fitted_order, 1.9, 2.1), "{r:?}");
        let r = spherical_residual(&p, 1.0, [0.1, 10.0], &DEFAULT_LADDER).unwrap();
        assert!(in_band(r.fitted_order, 1.9, 2.1), "{r:?}");
    }

    #[test]
    fn ladder_is_validated() {
        let p = FieldParams::at_rest(1.0, 0.3).unwrap();
        assert!(ode_residual_1d(&p, [0.0, TAU], &[32, 64]).is_err());
        assert!(pde_residual_2d(&FieldParams::slice(1.0, 2.0, 0.3).unwrap(), DEFAULT_EXTENTS, &DEFAULT_LADDER).is_err());
    }
}

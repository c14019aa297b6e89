//! Finite-difference residuals of the exact m-KGF solutions on a refinement
//! ladder, with the fitted convergence order.

use std::f64::consts::TAU;

use bitrial::fieldeq::{ode_residual_1d, pde_residual_2d, spherical_residual, FieldParams, ResidualReport, DEFAULT_EXTENTS, DEFAULT_LADDER};

fn show(name: &str, r: &ResidualReport) {
    println!("{name}: order {:.3}", r.fitted_order);
    for (h, e) in r.spacings.iter().zip(&r.residual_norms) {
        println!("  h {h:.5}  residual {e:.3e}");
    }
}

fn main() -> bitrial::Result<()> {
    let p = FieldParams::at_rest(1.0, 0.3)?;
    show("ode1d", &ode_residual_1d(&p, [0.0, TAU], &DEFAULT_LADDER)?);

    let p = FieldParams::slice(2f64.sqrt(), 1.0, 0.3)?;
    show("pde2d", &pde_residual_2d(&p, DEFAULT_EXTENTS, &DEFAULT_LADDER)?);

    let p = FieldParams::at_rest(1.0, 1.0 / 137.0)?;
    show("spherical", &spherical_residual(&p, 1.0, [0.1, 10.0], &DEFAULT_LADDER)?);
    Ok(())
}

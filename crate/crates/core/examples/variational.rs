//! Euler-Lagrange consistency of the discrete action and the
//! self-adjointness defect of both operator versions.

use bitrial::fieldeq::{el_vs_operator_check, self_adjointness_ladder, AdjointVersion, FieldParams, DEFAULT_EXTENTS, DEFAULT_LADDER};

fn main() -> bitrial::Result<()> {
    let p = FieldParams::slice(2f64.sqrt(), 1.0, 0.3)?;
    for sign in [1, -1] {
        let r = el_vs_operator_check(&p, sign, 1, DEFAULT_EXTENTS, &DEFAULT_LADDER)?;
        println!("EL vs operator, sign {sign:+}: order {:.3}, finest {:.3e}", r.fitted_order, r.finest());
    }
    for version in [AdjointVersion::Coefficient1Weighted, AdjointVersion::Coefficient2] {
        let r = self_adjointness_ladder(&p, version, 1, 2, DEFAULT_EXTENTS, &DEFAULT_LADDER)?;
        let defects: Vec<String> = r.residual_norms.iter().map(|d| format!("{d:.3e}")).collect();
        println!("{}: defects {}", version.name(), defects.join(" -> "));
    }
    Ok(())
}

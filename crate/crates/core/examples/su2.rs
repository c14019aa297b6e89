//! SU(2,α) elements built from the m-trigonometric functions.

use bitrial::malgebra::su2_alpha;

fn main() -> bitrial::Result<()> {
    let axis = [0.0, 0.6, 0.8];
    for alpha in [0.0, 0.3, -0.5] {
        let g = su2_alpha(1.2, axis, alpha)?;
        println!("alpha {alpha:4}: det {:.12}, unitarity defect {:.2e}", g.determinant(), g.unitarity_defect());
        println!("{:.6}", g.matrix);
    }
    Ok(())
}

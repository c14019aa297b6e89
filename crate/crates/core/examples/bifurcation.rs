//! Branch counts along `q` for the Ricker map (α = 0) and its fully broken
//! deformation (α = -1), where the period-doubling cascade stops after one
//! bifurcation.
//!
//! ```text
//! cargo run --release --example bifurcation
//! ```

use bitrial::dynamics::{bifurcation_scan, Control, MapParams, ScanSpec, StepRule};

fn main() -> bitrial::Result<()> {
    for alpha in [0.0, -1.0] {
        let spec = ScanSpec::new(MapParams::vrp(1.0, 1.0, alpha), Control::Q, 1.0, 15.0, 400, StepRule::Vrp);
        let diagram = bifurcation_scan(&spec)?;
        println!("alpha = {alpha}: max branch count {}", diagram.max_branch_count());
        // first cell at which each new branch count appears
        let mut seen = 0;
        for (q, &n) in diagram.control_values.iter().zip(&diagram.branch_counts) {
            if n > seen && n <= 8 {
                println!("  q = {q:7.3}  branches {n}");
                seen = n;
            }
        }
    }
    Ok(())
}

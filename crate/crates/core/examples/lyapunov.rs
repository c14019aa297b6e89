//! Lyapunov exponents of the VRP map over `q` for a few values of α, and the
//! fraction of chaotic cells.

use bitrial::dynamics::{chaotic_fraction, lyapunov_exponent, lyapunov_scan, Control, MapParams, ScanSpec, StepRule};

fn main() -> bitrial::Result<()> {
    // stable fixed point x* = ln q of the Ricker map: λ = ln|1 - ln q|
    let q = 2.0;
    let lam = lyapunov_exponent(StepRule::Vrp.default_start(), &MapParams::ricker(q), StepRule::Vrp, 20_000)?;
    println!("ricker q = 2: lambda {lam:.6}, exact {:.6}", (1.0 - q.ln()).abs().ln());

    for alpha in [0.0, -0.5, -0.9, -0.99, -1.0] {
        let spec = ScanSpec::new(MapParams::vrp(1.0, 1.0, alpha), Control::Q, 1.0, 15.0, 200, StepRule::Vrp);
        let exps = lyapunov_scan(&spec, 20_000)?;
        let max = exps.iter().map(|e| e.1).fold(f64::NEG_INFINITY, f64::max);
        println!("alpha = {alpha:5}: chaotic fraction {:.3}, max lambda {max:.4}", chaotic_fraction(&exps));
    }
    Ok(())
}

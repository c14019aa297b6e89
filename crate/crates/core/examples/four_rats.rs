//! Orbits of the inverse-square recurrence `r ↦ 2q₁μ/(r²(e^{μr} + α))` near
//! α = 1/137. Some starts hit a pole or escape; the ones that survive the
//! transient stay in a bounded window.

use bitrial::dynamics::{iterate_orbit, MapParams, StepRule};
use bitrial::numcore::seeded_sampler;

fn main() -> bitrial::Result<()> {
    let starts = seeded_sampler(7, 0.1, 3.0, 100)?;
    for q1 in [-12.0, -8.0, -4.0, -2.0, -1.0, -0.5] {
        let p = MapParams::four_rats(q1, 1.0, 1.0 / 137.0);
        let mut diverged = 0;
        let mut bound: f64 = 0.0;
        for &r0 in &starts {
            let orbit = iterate_orbit(r0, &p, StepRule::FourRats, 1000, 20_000)?;
            if orbit.diverged {
                diverged += 1;
            } else {
                bound = orbit.samples.iter().fold(bound, |b, r| b.max(r.abs()));
            }
        }
        println!("q1 = {q1:6}: {diverged:3}/100 diverged, survivors within |r| <= {bound:.3}");
    }
    Ok(())
}

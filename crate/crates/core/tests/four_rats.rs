use bitrial::dynamics::{iterate_orbit, MapParams, StepRule};
use bitrial::numcore::seeded_sampler;
use rayon::prelude::*;

/// Largest |r| reached by surviving orbits for q₁ ∈ [-12, -0.5] was 43.17.
const SURVIVOR_BOUND: f64 = 45.0;

#[test]
fn surviving_orbits_stay_bounded() {
    let starts = seeded_sampler(7, 0.1, 3.0, 100).unwrap();
    for q1 in [-12.0, -6.0, -2.0, -0.5] {
        let p = MapParams::four_rats(q1, 1.0, 1.0 / 137.0);
        let outcomes: Vec<Option<f64>> = starts
            .par_iter()
            .map(|&r0| {
                let orbit = iterate_orbit(r0, &p, StepRule::FourRats, 1000, 99_000).unwrap();
                (!orbit.diverged).then(|| orbit.samples.iter().fold(0.0, |b: f64, r| b.max(r.abs())))
            })
            .collect();
        let survivors: Vec<f64> = outcomes.into_iter().flatten().collect();
        assert!(survivors.len() >= 20, "q1 {q1}: only {} survivors", survivors.len());
        for bound in survivors {
            assert!(bound <= SURVIVOR_BOUND, "q1 {q1}: |r| reached {bound}");
        }
    }
}

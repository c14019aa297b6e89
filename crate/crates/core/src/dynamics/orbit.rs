use crate::error::{Error, Result};
use crate::numcore::Tolerance;

use super::maps::{MapParams, StepRule};

/// States beyond this magnitude count as divergence.
pub const DIVERGENCE_THRESHOLD: f64 = 1e100;

/// Lower bound for each `ln|f'(x)|` term, so superstable orbits stay finite.
pub const LYAPUNOV_FLOOR: f64 = -50.0;

/// Transient discarded before Lyapunov averaging.
pub const LYAPUNOV_TRANSIENT: usize = 1000;

/// Post-transient states of an iterated map.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    pub samples: Vec<f64>,
    pub diverged: bool,
    /// Iteration index (counting from 0, transient included) of the step that
    /// failed or left the divergence threshold.
    pub diverged_at: Option<usize>,
}

/// Iterates `n_transient + n_keep` times from `x0` and keeps the last
/// `n_keep` states. Singular steps and escapes truncate the orbit and set the
/// divergence marker instead of raising.
pub fn iterate_orbit(
    x0: f64,
    p: &MapParams,
    rule: StepRule,
    n_transient: usize,
    n_keep: usize,
) -> Result<Orbit> {
    if n_keep == 0 {
        return Err(Error::Size("n_keep must be at least 1".into()));
    }
    let mut samples = Vec::with_capacity(n_keep);
    let mut x = x0;
    for k in 0..n_transient + n_keep {
        match rule.apply(x, p) {
            Ok(next) if next.is_finite() && next.abs() <= DIVERGENCE_THRESHOLD => x = next,
            _ => {
                return Ok(Orbit {
                    samples,
                    diverged: true,
                    diverged_at: Some(k),
                })
            }
        }
        if k >= n_transient {
            samples.push(x);
        }
    }
    Ok(Orbit {
        samples,
        diverged: false,
        diverged_at: None,
    })
}

/// Number of clusters after sorting and merging neighbours that `tol`
/// accepts as equal. A period-k cycle yields k.
pub fn count_branches(samples: &[f64], tol: &Tolerance) -> usize {
    let mut sorted: Vec<f64> = samples.iter().copied().filter(|v| v.is_finite()).collect();
    if sorted.is_empty() {
        return 0;
    }
    sorted.sort_by(f64::total_cmp);
    1 + sorted.windows(2).filter(|w| !tol.accepts(w[0], w[1])).count()
}

/// Mean of `ln|f'(x_k)|` over `n` steps after a 1000-step transient.
///
/// Returns `f64::INFINITY` when the orbit diverges or hits a singular point.
/// Each log term is floored at [`LYAPUNOV_FLOOR`].
pub fn lyapunov_exponent(x0: f64, p: &MapParams, rule: StepRule, n: usize) -> Result<f64> {
    if n < 1000 {
        return Err(Error::Size(format!("Lyapunov averaging needs n >= 1000, got {n}")));
    }
    let mut x = x0;
    let advance = |x: f64| match rule.apply(x, p) {
        Ok(next) if next.is_finite() && next.abs() <= DIVERGENCE_THRESHOLD => Some(next),
        _ => None,
    };
    for _ in 0..LYAPUNOV_TRANSIENT {
        match advance(x) {
            Some(next) => x = next,
            None => return Ok(f64::INFINITY),
        }
    }
    let mut sum = 0.0;
    for _ in 0..n {
        let d = match rule.derivative(x, p) {
            Ok(d) if d.is_finite() => d.abs(),
            _ => return Ok(f64::INFINITY),
        };
        sum += if d > 0.0 { d.ln().max(LYAPUNOV_FLOOR) } else { LYAPUNOV_FLOOR };
        match advance(x) {
            Some(next) => x = next,
            None => return Ok(f64::INFINITY),
        }
    }
    Ok(sum / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ricker_fixed_point() {
        let orbit = iterate_orbit(0.5, &MapParams::ricker(2.0), StepRule::Vrp, 1000, 8).unwrap();
        assert!(!orbit.diverged);
        assert_eq!(orbit.samples.len(), 8);
        for x in orbit.samples {
            assert!((x - 2f64.ln()).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_growth_collapses() {
        let orbit = iterate_orbit(0.7, &MapParams::ricker(0.0), StepRule::Vrp, 3, 5).unwrap();
        assert!(orbit.samples.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn pole_start_is_marked() {
        let orbit = iterate_orbit(0.0, &MapParams::vrp(2.0, 1.0, -1.0), StepRule::Vrp, 10, 5).unwrap();
        assert!(orbit.diverged);
        assert_eq!(orbit.diverged_at, Some(0));
        assert!(orbit.samples.is_empty());
        let orbit = iterate_orbit(0.0, &MapParams::four_rats(1.0, 1.0, 0.0), StepRule::FourRats, 0, 5).unwrap();
        assert_eq!(orbit.diverged_at, Some(0));
    }

    #[test]
    fn escape_is_truncated() {
        // inverse-square recurrence alternates tiny/huge states and escapes
        let orbit =
            iterate_orbit(0.1, &MapParams::four_rats(1.0, 1.0, 1.0 / 137.0), StepRule::FourRats, 0, 100_000).unwrap();
        assert!(orbit.diverged);
        let k = orbit.diverged_at.unwrap();
        assert_eq!(orbit.samples.len(), k);
        assert!(orbit.samples.iter().all(|x| x.abs() <= DIVERGENCE_THRESHOLD));
    }

    #[test]
    fn branch_counting() {
        let tol = Tolerance::absolute(1e-6).unwrap();
        assert_eq!(count_branches(&[0.5, 0.5, 0.5], &tol), 1);
        assert_eq!(count_branches(&[0.2, 1.7, 0.2, 1.7], &tol), 2);
        assert_eq!(count_branches(&[1.0, 1.0 + 5e-7, 1.0 - 5e-7], &tol), 1);
        assert_eq!(count_branches(&[], &tol), 0);
    }

    #[test]
    fn chaotic_orbit_has_many_branches() {
        let tol = Tolerance::absolute(1e-6).unwrap();
        let orbit = iterate_orbit(0.5, &MapParams::ricker(20.0), StepRule::Vrp, 1000, 500).unwrap();
        let n = count_branches(&orbit.samples, &tol);
        assert!(n >= 100, "{n}");
        assert_eq!(n, 500);
    }

    #[test]
    fn lyapunov_stable_fixed_point() {
        let lam = lyapunov_exponent(0.5, &MapParams::ricker(2.0), StepRule::Vrp, 2000).unwrap();
        let exact = (1.0 - 2f64.ln()).abs().ln();
        assert!((lam - exact).abs() < 1e-9, "{lam} vs {exact}");
        assert!((exact - (-1.181_387_061_856)).abs() < 1e-11);
    }

    #[test]
    fn lyapunov_chaotic_ricker() {
        let lam = lyapunov_exponent(0.5, &MapParams::ricker(20.0), StepRule::Vrp, 5000).unwrap();
        assert!(lam > 0.0, "{lam}");
    }

    #[test]
    fn lyapunov_superstable_is_floored() {
        let lam = lyapunov_exponent(0.5, &MapParams::ricker(std::f64::consts::E), StepRule::Vrp, 1000).unwrap();
        assert!(lam.is_finite());
        assert!(lam < -20.0, "{lam}");
        assert!(lam >= LYAPUNOV_FLOOR);
    }

    #[test]
    fn lyapunov_divergence_marker_and_size() {
        let lam = lyapunov_exponent(0.1, &MapParams::four_rats(1.0, 1.0, 1.0 / 137.0), StepRule::FourRats, 1000)
            .unwrap();
        assert_eq!(lam, f64::INFINITY);
        assert!(lyapunov_exponent(0.5, &MapParams::ricker(2.0), StepRule::Vrp, 999).is_err());
    }
}

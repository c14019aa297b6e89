//! Parameter sweeps over the VRP family.
//!
//! Cells are independent and evaluated in parallel; results are always
//! assembled in control-grid order, so output does not depend on the number
//! of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numcore::{uniform, Tolerance};

use super::maps::{MapParams, StepRule};
use super::orbit::{count_branches, iterate_orbit, lyapunov_exponent};

/// The parameter that a scan sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Control {
    Q,
    Q1,
    Phi,
    Mu,
    Alpha,
}

impl Control {
    pub fn set(self, p: &MapParams, value: f64) -> MapParams {
        let mut p = *p;
        match self {
            Control::Q => p.q = value,
            Control::Q1 => p.q1 = value,
            Control::Phi => p.phi = value,
            Control::Mu => p.mu = value,
            Control::Alpha => p.alpha = value,
        }
        p
    }

    pub fn name(self) -> &'static str {
        match self {
            Control::Q => "q",
            Control::Q1 => "q1",
            Control::Phi => "phi",
            Control::Mu => "mu",
            Control::Alpha => "alpha",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "q" => Some(Control::Q),
            "q1" => Some(Control::Q1),
            "phi" => Some(Control::Phi),
            "mu" => Some(Control::Mu),
            "alpha" => Some(Control::Alpha),
            _ => None,
        }
    }
}

/// Initial condition of each scan cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StartPolicy {
    /// The rule's default start (0.5 for VRP, 1.0 for the inverse-square forms).
    RuleDefault,
    Fixed(f64),
    /// Cell `i` draws its start from a ChaCha8 stream seeded with `seed + i`.
    Random { seed: u64, low: f64, high: f64 },
}

impl StartPolicy {
    fn start(&self, rule: StepRule, cell: usize) -> f64 {
        match *self {
            StartPolicy::RuleDefault => rule.default_start(),
            StartPolicy::Fixed(x0) => x0,
            StartPolicy::Random { seed, low, high } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(cell as u64));
                uniform(&mut rng, low, high)
            }
        }
    }
}

/// Sweep specification shared by bifurcation and Lyapunov scans.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanSpec {
    pub params: MapParams,
    pub control: Control,
    pub low: f64,
    pub high: f64,
    pub grid_points: usize,
    pub rule: StepRule,
    pub start: StartPolicy,
    pub n_transient: usize,
    pub n_keep: usize,
    pub tol: Tolerance,
}

impl ScanSpec {
    /// Transient long enough to resolve the slow convergence next to
    /// period-doubling points, where |f'| ≈ 1.
    pub const DEFAULT_TRANSIENT: usize = 10_000;
    pub const DEFAULT_KEEP: usize = 500;

    pub fn new(params: MapParams, control: Control, low: f64, high: f64, grid_points: usize, rule: StepRule) -> Self {
        Self {
            params,
            control,
            low,
            high,
            grid_points,
            rule,
            start: StartPolicy::RuleDefault,
            n_transient: Self::DEFAULT_TRANSIENT,
            n_keep: Self::DEFAULT_KEEP,
            tol: Tolerance {
                absolute: 1e-6,
                relative: 0.0,
            },
        }
    }

    pub fn control_values(&self) -> Vec<f64> {
        let n = self.grid_points;
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.high
                } else {
                    self.low + (self.high - self.low) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.grid_points < 2 {
            return Err(Error::Size(format!("scan needs at least 2 grid points, got {}", self.grid_points)));
        }
        if !(self.low.is_finite() && self.high.is_finite()) || self.low > self.high {
            return Err(Error::Domain(format!("invalid control range [{}, {}]", self.low, self.high)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BifurcationDiagram {
    pub control_values: Vec<f64>,
    pub attractor_samples: Vec<Vec<f64>>,
    /// 0 for cells whose orbit diverged.
    pub branch_counts: Vec<usize>,
}

impl BifurcationDiagram {
    pub fn max_branch_count(&self) -> usize {
        self.branch_counts.iter().copied().max().unwrap_or(0)
    }
}

pub fn bifurcation_scan(spec: &ScanSpec) -> Result<BifurcationDiagram> {
    spec.validate()?;
    let controls = spec.control_values();
    let cells: Vec<(Vec<f64>, usize)> = controls
        .par_iter()
        .enumerate()
        .map(|(i, &c)| {
            let p = spec.control.set(&spec.params, c);
            let x0 = spec.start.start(spec.rule, i);
            let orbit = iterate_orbit(x0, &p, spec.rule, spec.n_transient, spec.n_keep)?;
            if orbit.diverged {
                Ok((orbit.samples, 0))
            } else {
                let n = count_branches(&orbit.samples, &spec.tol);
                Ok((orbit.samples, n))
            }
        })
        .collect::<Result<_>>()?;
    let (attractor_samples, branch_counts) = cells.into_iter().unzip();
    Ok(BifurcationDiagram {
        control_values: controls,
        attractor_samples,
        branch_counts,
    })
}

/// Lyapunov exponent per control value, averaging over `n` steps.
pub fn lyapunov_scan(spec: &ScanSpec, n: usize) -> Result<Vec<(f64, f64)>> {
    spec.validate()?;
    let controls = spec.control_values();
    controls
        .par_iter()
        .enumerate()
        .map(|(i, &c)| {
            let p = spec.control.set(&spec.params, c);
            let lam = lyapunov_exponent(spec.start.start(spec.rule, i), &p, spec.rule, n)?;
            Ok((c, lam))
        })
        .collect()
}

/// Fraction of cells with a finite positive exponent.
pub fn chaotic_fraction(exponents: &[(f64, f64)]) -> f64 {
    if exponents.is_empty() {
        return 0.0;
    }
    let chaotic = exponents
        .iter()
        .filter(|(_, lam)| lam.is_finite() && *lam > 0.0)
        .count();
    chaotic as f64 / exponents.len() as f64
}

//! The Verhulst-Ricker-Planck (VRP) family of one-dimensional maps.
//!
//! `x ↦ q x^Φ/(e^x + α)` interpolates between the Ricker map (`Φ = 1`,
//! `α = 0`) and the Planck-like limit `α = -1`, where the chaotic part of the
//! bifurcation diagram disappears. The inverse-square recurrence
//! `r ↦ 2 q₁ μ/(r² (e^{μr} + α))` and the combined limit map share the same
//! orbit, Lyapunov and scan machinery through [`StepRule`].

mod maps;
mod orbit;
mod scan;

pub use maps::{
    four_rats_derivative, four_rats_step, limit_map_derivative, limit_map_step, vrp_derivative, vrp_step,
    MapParams, StepRule,
};
pub use orbit::{
    count_branches, iterate_orbit, lyapunov_exponent, Orbit, DIVERGENCE_THRESHOLD, LYAPUNOV_FLOOR,
    LYAPUNOV_TRANSIENT,
};
pub use scan::{
    bifurcation_scan, chaotic_fraction, lyapunov_scan, BifurcationDiagram, Control, ScanSpec, StartPolicy,
};

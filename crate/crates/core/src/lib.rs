//! Numerical toolkit for bitrial (m-exponential) deformations.
//!
//! The bitrial substitution replaces `e^θ` by `1/(e^{-θ} + α)`. This crate
//! implements the objects that come out of that substitution and the
//! numerical checks that back each closed-form statement about them:
//!
//! - [`dynamics`]: the Verhulst-Ricker-Planck (VRP) map family, orbits,
//!   bifurcation scans, branch counting and Lyapunov exponents.
//! - [`malgebra`]: the bitrial exponent, the m-algebra on phase parameters,
//!   the Blaschke-type angle correspondence, m-trigonometry and SU(2,α).
//! - [`mfourier`]: the m-Fourier basis, Gram matrices for both pairing
//!   conventions, coefficients and Gram-corrected synthesis.
//! - [`fieldeq`]: the modified Klein-Gordon-Fock operator, its exact
//!   solutions, finite-difference residual reports, the Lagrangian density and
//!   the self-adjointness defect test.
//! - [`numcore`]: shared kernels (periodic quadrature, stencils, the
//!   closed-form contour oracle, seeded sampling).
//! - [`cli`]: run configurations and deterministic CSV/JSON emitters used by
//!   the `bitrial` binary.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod fieldeq;
pub mod malgebra;
pub mod mfourier;
pub mod numcore;

pub use error::{Error, Result};
pub use num_complex::Complex64;

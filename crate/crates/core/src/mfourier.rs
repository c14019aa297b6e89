//! The m-Fourier basis `φ_n(θ) = ((1-α²)/(e^{-iθ}+α))^n`, `n ∈ Z`.
//!
//! For `α ≠ 0` the basis is not orthogonal under either pairing:
//!
//! - same-sign: `∫ φ_n φ_m^{-1} dθ`, which depends on `n - m` only and equals
//!   [`contour_moment_oracle`](crate::numcore::contour_moment_oracle)`(n - m)`;
//!   it is nonzero for every `m ≥ n`.
//! - conjugate: `∫ φ_n φ*_m dθ` with `φ*_m = ((1-α²)/(e^{iθ}+α))^m`, the
//!   complex conjugate of `φ_m` for real `θ`; a Hermitian matrix.
//!
//! Synthesis therefore solves the finite Gram system for the weights instead
//! of using the raw coefficients `a_n` directly.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numcore::{contour_moment_oracle, quad_periodic, PeriodicGrid};

/// Condition numbers above this abort the Gram solve.
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex(pub i32);

/// Inclusive index range `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexRange {
    pub min: i32,
    pub max: i32,
}

impl IndexRange {
    pub fn new(min: i32, max: i32) -> Result<Self> {
        if min > max {
            return Err(Error::Domain(format!("empty index range [{min}, {max}]")));
        }
        Ok(Self { min, max })
    }

    /// `[-n, n]`
    pub fn symmetric(n: i32) -> Self {
        let n = n.abs();
        Self { min: -n, max: n }
    }

    pub fn len(&self) -> usize {
        (self.max - self.min + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn indices(&self) -> impl Iterator<Item = i32> {
        self.min..=self.max
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("|α| must be below 1, got {alpha}")))
    }
}

/// `((1-α²)/(e^{-iθ}+α))^n`
pub fn basis_fn(theta: f64, n: BasisIndex, alpha: f64) -> Result<Complex64> {
    check_alpha(alpha)?;
    let base = Complex64::new(1.0 - alpha * alpha, 0.0) / (Complex64::from_polar(1.0, -theta) + alpha);
    Ok(base.powi(n.0))
}

/// `((1-α²)/(e^{iθ}+α))^m`
pub fn conj_basis_fn(theta: f64, m: BasisIndex, alpha: f64) -> Result<Complex64> {
    check_alpha(alpha)?;
    let base = Complex64::new(1.0 - alpha * alpha, 0.0) / (Complex64::from_polar(1.0, theta) + alpha);
    Ok(base.powi(m.0))
}

/// `∫₀^{2π} φ_n φ_m^{-1} dθ`
pub fn gram_same_sign(n: BasisIndex, m: BasisIndex, alpha: f64, grid: &PeriodicGrid) -> Result<Complex64> {
    check_alpha(alpha)?;
    quad_periodic(
        |t| {
            let a = basis_fn(t, n, alpha).unwrap_or(Complex64::new(f64::NAN, 0.0));
            let b = basis_fn(t, m, alpha).unwrap_or(Complex64::new(f64::NAN, 0.0));
            a / b
        },
        grid,
    )
}

/// `∫₀^{2π} φ_n φ*_m dθ`
pub fn gram_conjugate(n: BasisIndex, m: BasisIndex, alpha: f64, grid: &PeriodicGrid) -> Result<Complex64> {
    check_alpha(alpha)?;
    quad_periodic(
        |t| {
            let a = basis_fn(t, n, alpha).unwrap_or(Complex64::new(f64::NAN, 0.0));
            let b = conj_basis_fn(t, m, alpha).unwrap_or(Complex64::new(f64::NAN, 0.0));
            a * b
        },
        grid,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    SameSign,
    Conjugate,
}

impl Pairing {
    pub fn name(self) -> &'static str {
        match self {
            Pairing::SameSign => "same_sign",
            Pairing::Conjugate => "conjugate",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "same_sign" | "same-sign" => Some(Pairing::SameSign),
            "conjugate" => Some(Pairing::Conjugate),
            _ => None,
        }
    }
}

/// Pairing integrals over an index block; `entries[(i, j)]` is the pairing
/// of `n = range.min + i` with `m = range.min + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub range: IndexRange,
    pub alpha: f64,
    pub convention: Pairing,
    pub entries: DMatrix<Complex64>,
}

impl GramMatrix {
    pub fn build(range: IndexRange, alpha: f64, convention: Pairing, grid: &PeriodicGrid) -> Result<Self> {
        check_alpha(alpha)?;
        let size = range.len();
        let mut entries = DMatrix::zeros(size, size);
        for (i, n) in range.indices().enumerate() {
            for (j, m) in range.indices().enumerate() {
                entries[(i, j)] = match convention {
                    Pairing::SameSign => gram_same_sign(BasisIndex(n), BasisIndex(m), alpha, grid)?,
                    Pairing::Conjugate => gram_conjugate(BasisIndex(n), BasisIndex(m), alpha, grid)?,
                };
            }
        }
        Ok(Self {
            range,
            alpha,
            convention,
            entries,
        })
    }

    pub fn entry(&self, n: i32, m: i32) -> Complex64 {
        self.entries[((n - self.range.min) as usize, (m - self.range.min) as usize)]
    }

    /// Value the published orthogonality statement asserts for `(n, m)`, if
    /// any: `2π` on the diagonal, `2πα/(1-α²)` at `m = n + 1` and `0`
    /// elsewhere for the same-sign pairing; `0` off the diagonal for the
    /// conjugate pairing.
    pub fn claimed_entry(&self, n: i32, m: i32) -> Option<Complex64> {
        let a = self.alpha;
        match self.convention {
            Pairing::SameSign if m == n => Some(Complex64::new(std::f64::consts::TAU, 0.0)),
            Pairing::SameSign if m == n + 1 => {
                Some(Complex64::new(std::f64::consts::TAU * a / (1.0 - a * a), 0.0))
            }
            Pairing::SameSign => Some(Complex64::new(0.0, 0.0)),
            Pairing::Conjugate if m == n => None,
            Pairing::Conjugate => Some(Complex64::new(0.0, 0.0)),
        }
    }

    /// Largest `|entry - oracle(n - m)|` for the same-sign pairing.
    pub fn max_oracle_deviation(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for n in self.range.indices() {
            for m in self.range.indices() {
                let oracle = contour_moment_oracle(n - m, self.alpha)?;
                worst = worst.max((self.entry(n, m) - oracle).norm());
            }
        }
        Ok(worst)
    }
}

/// Raw m-Fourier coefficients
/// `a_n = √((1-α²)/2π) ∫ f(θ) ((1-α²)/(e^{iθ}+α))^n dθ`.
#[derive(Debug, Clone, PartialEq)]
pub struct MFourierCoefficients {
    pub alpha: f64,
    pub range: IndexRange,
    pub values: Vec<Complex64>,
    pub grid: PeriodicGrid,
}

fn coefficient_scale(alpha: f64) -> f64 {
    ((1.0 - alpha * alpha) / std::f64::consts::TAU).sqrt()
}

pub fn m_fourier_coefficients<F>(f: F, range: IndexRange, alpha: f64, grid: &PeriodicGrid) -> Result<MFourierCoefficients>
where
    F: Fn(f64) -> Complex64,
{
    check_alpha(alpha)?;
    let samples: Vec<Complex64> = grid.nodes().map(&f).collect();
    let scale = coefficient_scale(alpha);
    let values = range
        .indices()
        .map(|n| {
            let mut sum = Complex64::new(0.0, 0.0);
            for (j, theta) in grid.nodes().enumerate() {
                let term = samples[j] * conj_basis_fn(theta, BasisIndex(n), alpha)?;
                if !(term.re.is_finite() && term.im.is_finite()) {
                    return Err(Error::Domain(format!("integrand is not finite at node {j} (θ = {theta})")));
                }
                sum += term;
            }
            Ok(sum * grid.spacing() * scale)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MFourierCoefficients {
        alpha,
        range,
        values,
        grid: *grid,
    })
}

/// Synthesis weights `c` solving `Σ_m ⟨φ_m, φ_n⟩ c_m = ⟨f, φ_n⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct Synthesis {
    pub alpha: f64,
    pub range: IndexRange,
    pub weights: Vec<Complex64>,
    pub condition: f64,
}

impl Synthesis {
    pub fn eval(&self, theta: f64) -> Complex64 {
        self.range
            .indices()
            .zip(&self.weights)
            .map(|(n, c)| c * basis_fn(theta, BasisIndex(n), self.alpha).unwrap_or_default())
            .sum()
    }

    /// Relative L² distance over the grid between `f` and this synthesis.
    pub fn relative_error<F>(&self, f: F, grid: &PeriodicGrid) -> f64
    where
        F: Fn(f64) -> Complex64,
    {
        let (mut num, mut den) = (0.0, 0.0);
        for theta in grid.nodes() {
            let exact = f(theta);
            num += (self.eval(theta) - exact).norm_sqr();
            den += exact.norm_sqr();
        }
        if den > 0.0 {
            (num / den).sqrt()
        } else {
            num.sqrt()
        }
    }
}

impl MFourierCoefficients {
    /// Solves the Gram system for the synthesis weights.
    pub fn synthesis(&self) -> Result<Synthesis> {
        let gram = GramMatrix::build(self.range, self.alpha, Pairing::Conjugate, &self.grid)?;
        // ⟨φ_m, φ_n⟩ = ∫ φ_m conj(φ_n) = conjugate-pairing entry (m, n)
        let system = gram.entries.transpose();
        let scale = coefficient_scale(self.alpha);
        let rhs = DVector::from_iterator(self.values.len(), self.values.iter().map(|a| a / scale));
        let (weights, condition) = hermitian_solve(system, rhs)?;
        Ok(Synthesis {
            alpha: self.alpha,
            range: self.range,
            weights: weights.iter().copied().collect(),
            condition,
        })
    }
}

fn hermitian_solve(system: DMatrix<Complex64>, rhs: DVector<Complex64>) -> Result<(DVector<Complex64>, f64)> {
    let eigen = system.clone().symmetric_eigen();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for v in eigen.eigenvalues.iter() {
        lo = lo.min(v.abs());
        hi = hi.max(v.abs());
    }
    let condition = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    if !(condition <= MAX_CONDITION) {
        return Err(Error::Conditioning {
            condition,
            limit: MAX_CONDITION,
        });
    }
    let chol = system.cholesky().ok_or(Error::Conditioning {
        condition,
        limit: MAX_CONDITION,
    })?;
    Ok((chol.solve(&rhs), condition))
}

/// Evaluates the Gram-corrected truncated series at `theta`.
pub fn synthesize(coeffs: &MFourierCoefficients, theta: f64) -> Result<Complex64> {
    Ok(coeffs.synthesis()?.eval(theta))
}

/// Relative L² distance over the grid between `f` and its synthesis on
/// `[-truncation, truncation]`.
pub fn reconstruction_error<F>(f: F, truncation: i32, alpha: f64, grid: &PeriodicGrid) -> Result<f64>
where
    F: Fn(f64) -> Complex64,
{
    if truncation < 1 {
        return Err(Error::Size(format!("truncation must be at least 1, got {truncation}")));
    }
    let coeffs = m_fourier_coefficients(&f, IndexRange::symmetric(truncation), alpha, grid)?;
    Ok(coeffs.synthesis()?.relative_error(f, grid))
}

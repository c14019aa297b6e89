//! m-Fourier coefficients and Gram-corrected synthesis of `1/(2 - cos θ)`.

use bitrial::mfourier::{m_fourier_coefficients, IndexRange};
use bitrial::numcore::PeriodicGrid;
use bitrial::Complex64;

fn main() -> bitrial::Result<()> {
    let grid = PeriodicGrid::new(4096)?;
    let f = |t: f64| Complex64::new(1.0 / (2.0 - t.cos()), 0.0);
    for alpha in [0.0, 1.0 / 137.0, 0.3] {
        for n in [8, 16, 32] {
            let coeffs = m_fourier_coefficients(f, IndexRange::symmetric(n), alpha, &grid)?;
            match coeffs.synthesis() {
                Ok(s) => println!(
                    "alpha {alpha:.5} N {n:2}: relative error {:.3e}, condition {:.2e}",
                    s.relative_error(f, &grid),
                    s.condition
                ),
                Err(e) => println!("alpha {alpha:.5} N {n:2}: {e}"),
            }
        }
    }
    Ok(())
}

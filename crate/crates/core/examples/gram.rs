//! Gram matrices of the m-Fourier basis under both pairings, compared with
//! the closed-form entries.

use bitrial::mfourier::{GramMatrix, IndexRange, Pairing};
use bitrial::numcore::PeriodicGrid;

fn main() -> bitrial::Result<()> {
    let grid = PeriodicGrid::new(4096)?;
    let range = IndexRange::new(-2, 2)?;
    for convention in [Pairing::SameSign, Pairing::Conjugate] {
        let g = GramMatrix::build(range, 0.3, convention, &grid)?;
        println!("{} pairing, alpha 0.3", convention.name());
        for n in range.indices() {
            let row: Vec<String> = range.indices().map(|m| format!("{:8.4}", g.entry(n, m).re)).collect();
            println!("  {}", row.join(" "));
        }
        let mut worst: f64 = 0.0;
        for n in range.indices() {
            for m in range.indices() {
                if let Some(claim) = g.claimed_entry(n, m) {
                    worst = worst.max((g.entry(n, m) - claim).norm());
                }
            }
        }
        // the claimed zeros beyond the first superdiagonal do not hold for α ≠ 0
        println!("  largest gap to the claimed entries {worst:.3e}");
    }
    Ok(())
}

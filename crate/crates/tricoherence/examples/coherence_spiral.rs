//! States of steadily decaying coherence along the logarithmic spiral
//! δ = exp(−0.23·φ) in the S1 = 0 plane.
//!
//! Run with: cargo run -p tricoherence --example coherence_spiral

use std::f64::consts::PI;
use tricoherence::scenario::run_spiral;

fn main() -> tricoherence::Result<()> {
    let rows = run_spiral(0.23, 4.0 * PI, 9, 0.0, 0)?;
    println!(
        "{:<9} {:>8} {:>8} {:>8} {:>8} {:>8}",
        "label", "phi", "S2", "S3", "P", "C"
    );
    for row in &rows {
        println!(
            "{:<9} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
            row.label, row.phi, row.s2, row.s3, row.p, row.c
        );
    }
    println!("\nP falls from 1 toward the incoherent center while C rises toward 1.");
    Ok(())
}

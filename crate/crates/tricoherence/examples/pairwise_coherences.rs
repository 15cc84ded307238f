//! Project a three-degree-of-freedom field onto each pair of degrees of
//! freedom and verify that every pair obeys P² + C² = 1.
//!
//! Run with: cargo run -p tricoherence --example pairwise_coherences

use ndarray::Array3;
use num_complex::Complex64;
use tricoherence::{CoherenceReport, FieldState};

fn main() -> tricoherence::Result<()> {
    // A structured field over 2 spin x 3 temporal x 2 spatial modes.
    let mut coeffs = Array3::zeros((2, 3, 2));
    coeffs[(0, 0, 0)] = Complex64::new(0.60, 0.00);
    coeffs[(0, 1, 0)] = Complex64::new(0.00, 0.35);
    coeffs[(1, 0, 1)] = Complex64::new(0.45, 0.00);
    coeffs[(1, 2, 0)] = Complex64::new(0.30, -0.20);
    coeffs[(0, 2, 1)] = Complex64::new(0.25, 0.10);
    let field = FieldState::new(coeffs)?.normalize()?;
    println!("field intensity = {:.12}", field.intensity());

    let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
    let diagonal = [
        Complex64::new(inv_sqrt2, 0.0),
        Complex64::new(0.0, inv_sqrt2),
    ];

    let states = [
        ("spatial mode 0", field.project_spatial(0)?),
        ("temporal mode 0", field.project_temporal(0)?),
        ("spin direction (1, i)/sqrt(2)", field.project_spin(diagonal)?),
    ];

    println!("\n{:<32} {:>5} {:>10} {:>10} {:>12}", "projection", "pair", "P", "C", "|P^2+C^2-1|");
    for (description, state) in &states {
        let report = CoherenceReport::for_state(state)?;
        println!(
            "{:<32} {:>5} {:>10.6} {:>10.6} {:>12.3e}",
            description,
            report.pair.short_label(),
            report.p,
            report.c,
            report.residual
        );
    }
    Ok(())
}

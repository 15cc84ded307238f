//! Walk through the mode-space optical elements: Dove prism rotations, the
//! mode converter's relative i phase, and arm attenuation.
//!
//! Run with: cargo run -p tricoherence --example optical_elements

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};
use tricoherence::{mzim_intensities, prepare_state, Arm, ElementTransform};

fn main() -> tricoherence::Result<()> {
    let pure_a = prepare_state(0.0, Complex64::new(0.0, 0.0))?;

    println!("Dove prism on a pure first-mode state:");
    for (label, alpha) in [("0", 0.0), ("pi/8", FRAC_PI_8), ("pi/4", FRAC_PI_4)] {
        let rotated = ElementTransform::dove_prism(alpha).apply(&pure_a)?;
        let (ia, ib) = mzim_intensities(&rotated)?;
        println!("  alpha = {label:>5}: ports = ({ia:.4}, {ib:.4})");
    }

    println!("\nMode converter on a balanced state (relative i phase):");
    let balanced = prepare_state(FRAC_PI_2, Complex64::new(1.0, 0.0))?;
    let converted = ElementTransform::mode_converter().apply(&balanced)?;
    println!("  before: row b amplitude = {:+.4}", balanced.coeffs()[(1, 0)]);
    println!("  after : row b amplitude = {:+.4}", converted.coeffs()[(1, 0)]);
    let twice = ElementTransform::mode_converter().apply(&converted)?;
    println!("  twice : row b amplitude = {:+.4}", twice.coeffs()[(1, 0)]);

    println!("\nAttenuation filter on arm b of a balanced state:");
    for t in [1.0, 0.5, 0.0] {
        let filtered = ElementTransform::attenuation_filter(t, Arm::B)?.apply(&balanced)?;
        let (ia, ib) = mzim_intensities(&filtered)?;
        let theta_eff = (ia - ib).clamp(-1.0, 1.0).acos();
        println!("  t = {t:.1}: ports = ({ia:.4}, {ib:.4}), effective theta = {theta_eff:.4}");
    }
    Ok(())
}

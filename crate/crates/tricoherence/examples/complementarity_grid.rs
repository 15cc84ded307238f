//! Sweep (θ, δ, φ) and compare the closed-form P and C against the
//! eigenvalue route through prepared states.
//!
//! Run with: cargo run -p tricoherence --example complementarity_grid

use std::f64::consts::TAU;

use tricoherence::coherence::{analytic_c, analytic_p};
use tricoherence::{prepare_state, CoherenceMatrix, TrParams};

fn main() -> tricoherence::Result<()> {
    let mut worst_p: f64 = 0.0;
    let mut worst_c: f64 = 0.0;
    let mut worst_residual: f64 = 0.0;
    let mut count = 0usize;
    for ti in 0..13 {
        let theta = TAU * ti as f64 / 12.0;
        for di in 0..5 {
            let delta = di as f64 / 4.0;
            for pi in 0..9 {
                let phi = TAU * pi as f64 / 8.0;
                let params = TrParams::new(theta, delta, phi)?;
                let matrix = CoherenceMatrix::from_state(&prepare_state(theta, params.gamma())?)?;
                let p = matrix.degree_of_polarization();
                let c = matrix.concurrence();
                worst_p = worst_p.max((p - analytic_p(&params)).abs());
                worst_c = worst_c.max((c - analytic_c(&params)).abs());
                worst_residual = worst_residual.max((p * p + c * c - 1.0).abs());
                count += 1;
            }
        }
    }
    println!("{count} grid points");
    println!("max |P_eigen - P_closed_form| = {worst_p:.3e}");
    println!("max |C_eigen - C_closed_form| = {worst_c:.3e}");
    println!("max |P^2 + C^2 - 1|           = {worst_residual:.3e}");
    Ok(())
}

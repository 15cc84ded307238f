//! Schmidt-decompose projected states and check the reconstruction.
//!
//! Run with: cargo run -p tricoherence --example schmidt_decomposition

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tricoherence::{prepare_state, BipartitePureState, Dof};

fn main() -> tricoherence::Result<()> {
    // A partially coherent two-mode state: eigenvalues are (1 ± 0.89)/2.
    let state = prepare_state(std::f64::consts::FRAC_PI_2, Complex64::new(0.89, 0.0))?;
    show("prepared two-mode state", &state)?;

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let random = BipartitePureState::random(2, 8, (Dof::Spin, Dof::Time), &mut rng)?;
    show("random (2, 8) state", &random)?;
    Ok(())
}

fn show(name: &str, state: &BipartitePureState) -> tricoherence::Result<()> {
    let schmidt = state.schmidt()?;
    println!("{name}:");
    println!("  eigenvalues  = {:?}", schmidt.eigenvalues());
    println!(
        "  sum          = {:.15}",
        schmidt.eigenvalues().iter().sum::<f64>()
    );
    let rebuilt = schmidt.reconstruct();
    let mut err: f64 = 0.0;
    for (idx, value) in state.coeffs().indexed_iter() {
        err = err.max((rebuilt[idx] - value).norm());
    }
    println!("  reconstruction error = {err:.3e}\n");
    Ok(())
}

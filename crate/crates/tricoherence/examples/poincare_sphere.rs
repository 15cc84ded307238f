//! Export a grid of states for Poincaré-sphere plotting and summarize the
//! geometric planes it populates.
//!
//! Run with: cargo run -p tricoherence --example poincare_sphere

use std::fs;
use std::path::Path;

use tricoherence::scenario::{run_sphere, write_csv, write_json, GridSpec};

fn main() -> tricoherence::Result<()> {
    let grid = GridSpec::default();
    let rows = run_sphere(&grid, 0.0, 0)?;

    let out_dir = Path::new("target/datasets");
    fs::create_dir_all(out_dir)?;
    let csv_path = out_dir.join("poincare_sphere.csv");
    write_csv(&rows, &csv_path)?;
    write_json(&rows, &out_dir.join("poincare_sphere.json"))?;

    let equatorial = rows.iter().filter(|r| r.s3.abs() <= 1e-10).count();
    let meridional = rows.iter().filter(|r| r.s1.abs() <= 1e-10).count();
    let interior = rows.iter().filter(|r| r.p < 1.0 - 1e-10).count();
    println!("wrote {} states to {}", rows.len(), csv_path.display());
    println!("  on the S3 = 0 plane: {equatorial}");
    println!("  on the S1 = 0 plane: {meridional}");
    println!("  strictly inside the sphere: {interior}");
    Ok(())
}

//! Simulate the five named reference states and print them next to the
//! recorded bench values.
//!
//! Run with: cargo run -p tricoherence --example reference_states

use tricoherence::scenario::run_table1;

fn main() -> tricoherence::Result<()> {
    let rows = run_table1(0.0, 0)?;
    println!(
        "{:<6} {:>8} {:>8} {:>8} {:>8} {:>8} {:>10}",
        "label", "S1", "S2", "S3", "P", "C", "P^2+C^2"
    );
    for row in &rows {
        println!(
            "{:<6} {:>8.3} {:>8.3} {:>8.3} {:>8.3} {:>8.3} {:>10.3}",
            row.label, row.s1, row.s2, row.s3, row.p, row.c, row.constraint_sum
        );
        if row.label.ends_with("_ref") {
            println!();
        }
    }
    println!("rows without _ref are noiseless simulations; p_alt rebuilds the");
    println!("p state from its recorded Stokes norm instead of its recorded P.");
    Ok(())
}

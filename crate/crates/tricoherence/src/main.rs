//! Command-line front end over the scenario drivers.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tricoherence::scenario::{
    self, parse_angle, rows_to_csv, rows_to_json, write_csv, write_json, GridSpec, ResultRow,
};
use tricoherence::{Result, SpectralModel};

#[derive(Parser)]
#[command(
    name = "tricoherence",
    version,
    about = "Pairwise optical-coherence analysis and two-spatial-mode Stokes tomography simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Gaussian noise standard deviation added to each detector port
    #[arg(long, default_value_t = 0.0, global = false)]
    noise_sigma: f64,
    /// Seed for the noise generator
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write results to this CSV file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit JSON (to stdout, or as a mirror file next to --out)
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a single prepared state (θ, δ, φ)
    Analyze {
        /// Splitting angle in radians; accepts pi literals such as 3pi/2
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        theta: f64,
        /// Temporal-overlap magnitude in [0, 1]
        #[arg(long)]
        delta: f64,
        /// Overlap phase in radians; accepts pi literals
        #[arg(long, value_parser = parse_angle, default_value = "0", allow_hyphen_values = true)]
        phi: f64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Simulate the five reference states and pair them with the recorded values
    Table1 {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Export a (θ, δ, φ) grid of states for Poincaré-sphere plotting
    Sphere {
        #[arg(long, default_value_t = 13)]
        theta_steps: usize,
        #[arg(long, default_value_t = 5)]
        delta_steps: usize,
        #[arg(long, default_value_t = 9)]
        phi_steps: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Export states along the decaying spiral δ = exp(−rate·φ) at θ = π/2
    Spiral {
        #[arg(long, default_value_t = 0.23)]
        rate: f64,
        /// Largest sampled φ; accepts pi literals
        #[arg(long, value_parser = parse_angle, default_value = "4pi")]
        phi_max: f64,
        #[arg(long, default_value_t = 33)]
        steps: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run the full bench end to end from a spectral model and a path delay
    Tomography {
        #[arg(long, value_parser = parse_angle)]
        theta: f64,
        /// Relative path delay handed to the translation stage
        #[arg(long)]
        tau: f64,
        /// Number of spectral modes in the broadband source model
        #[arg(long, default_value_t = 64)]
        modes: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn emit_rows(rows: &[ResultRow], common: &CommonOpts) -> Result<()> {
    match &common.out {
        Some(path) => {
            write_csv(rows, path)?;
            if common.json {
                write_json(rows, &path.with_extension("json"))?;
            }
            eprintln!("wrote {} rows to {}", rows.len(), path.display());
        }
        None => {
            if common.json {
                println!("{}", rows_to_json(rows)?);
            } else {
                print!("{}", rows_to_csv(rows));
            }
        }
    }
    Ok(())
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            theta,
            delta,
            phi,
            common,
        } => {
            let row = scenario::run_analyze(theta, delta, phi, common.noise_sigma, common.seed)?;
            emit_rows(std::slice::from_ref(&row), &common)
        }
        Command::Table1 { common } => {
            let rows = scenario::run_table1(common.noise_sigma, common.seed)?;
            emit_rows(&rows, &common)
        }
        Command::Sphere {
            theta_steps,
            delta_steps,
            phi_steps,
            common,
        } => {
            let grid = GridSpec::from_steps(theta_steps, delta_steps, phi_steps)?;
            let rows = scenario::run_sphere(&grid, common.noise_sigma, common.seed)?;
            emit_rows(&rows, &common)
        }
        Command::Spiral {
            rate,
            phi_max,
            steps,
            common,
        } => {
            let rows =
                scenario::run_spiral(rate, phi_max, steps, common.noise_sigma, common.seed)?;
            emit_rows(&rows, &common)
        }
        Command::Tomography {
            theta,
            tau,
            modes,
            common,
        } => {
            let model = SpectralModel::gaussian(modes, 10.0, 1.0)?;
            let run = scenario::run_tomography(theta, tau, &model, common.noise_sigma, common.seed)?;
            let text = serde_json::to_string_pretty(&run)
                .map_err(|e| tricoherence::Error::Parse(e.to_string()))?;
            match &common.out {
                Some(path) => {
                    std::fs::write(path, text + "\n")?;
                    eprintln!("wrote tomography run to {}", path.display());
                }
                None => {
                    if common.json {
                        println!("{text}");
                    } else {
                        println!("tau = {:.6}  delta = {:.6}  phi = {:.6}", run.tau, run.delta, run.phi);
                        println!(
                            "normalized stokes = ({:.6}, {:.6}, {:.6})",
                            run.report.normalized[0], run.report.normalized[1], run.report.normalized[2]
                        );
                        println!(
                            "P (stokes) = {:.6}  P (eigen) = {:.6}  C (eigen) = {:.6}",
                            run.report.p, run.eigen_p, run.eigen_c
                        );
                        println!(
                            "prep stage: theta = {:.6}  delta = {:.6}  C = {:.6}",
                            run.prep.theta, run.prep.delta, run.prep.concurrence
                        );
                        println!("P^2 + C^2 = {:.6}", run.row.constraint_sum);
                    }
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::FAILURE
        }
    }
}

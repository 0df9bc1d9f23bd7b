//! Command-line front door: run scenarios, classify parameter schedules,
//! sweep parameter grids, and emit machine-readable traces.
//!
//! Exit codes: 0 = pass or informational, 1 = an expected-value check
//! failed, 2 = input error. Output is byte-deterministic for identical
//! arguments.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod output;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "fixprox",
    version,
    about = "Fixed points and best proximity points of pseudocontractive self-mappings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario: compute its orbit and traces, write a CSV, and check
    /// expected values.
    Run {
        /// Builtin scenario name (s1..s5) or path to a scenario JSON file.
        #[arg(long)]
        scenario: String,
        /// Number of Picard iterations.
        #[arg(long, default_value_t = 100)]
        iters: usize,
        /// Convergence tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Trace CSV path (default: <scenario>_trace.csv).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Horizon for schedule classification.
        #[arg(long, default_value_t = 1000)]
        horizon: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Classify a parameter schedule against the intermediate-sense
    /// definitions.
    Classify {
        /// Inline JSON, a schedule JSON file, or a builtin scenario name.
        #[arg(long)]
        schedule: String,
        #[arg(long, default_value_t = 1000)]
        horizon: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Use the scaled mu-limit band for the strict-contractive check
        /// instead of the alpha-adjusted default.
        #[arg(long)]
        scaled_band: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate regions, contraction constants, and definition bands on a
    /// parameter grid, written as CSV (alpha-major, then beta, then mu).
    Sweep {
        /// Alpha range as LO:HI.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Beta range as LO:HI.
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Mu range as LO:HI.
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Grid points per axis (>= 2).
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value = "sweep.csv")]
        out: PathBuf,
    },
    /// Best-proximity diagnostics for a cyclic scenario.
    Proximity {
        /// Builtin scenario name or path; must carry cyclic sets.
        #[arg(long)]
        scenario: String,
        #[arg(long, default_value_t = 100)]
        iters: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Trace CSV path (default: <scenario>_proximity.csv).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed for the multi-start sampler.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Number of extra seeded starts for the uniqueness probe.
        #[arg(long, default_value_t = 1)]
        starts: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            scenario,
            iters,
            tol,
            out,
            horizon,
            format,
        } => commands::cmd_run(&scenario, iters, tol, out, horizon, format == Format::Json),
        Command::Classify {
            schedule,
            horizon,
            tol,
            scaled_band,
            format,
        } => commands::cmd_classify(&schedule, horizon, tol, scaled_band, format == Format::Json),
        Command::Sweep {
            alpha,
            beta,
            mu,
            steps,
            out,
        } => commands::cmd_sweep(&alpha, &beta, &mu, steps, &out),
        Command::Proximity {
            scenario,
            iters,
            tol,
            out,
            seed,
            starts,
            format,
        } => commands::cmd_proximity(
            &scenario,
            iters,
            tol,
            out,
            seed,
            starts,
            format == Format::Json,
        ),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

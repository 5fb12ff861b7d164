//! `dualfit`: fit, sweep, predict and verify lines that balance vertical and
//! horizontal squared errors, from CSV input.

mod commands;
mod input;
mod output;
mod report;

use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use crate::input::ColumnSpec;
use crate::report::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Fit one line and print the full report.
    Fit,
    /// Fit on a uniform grid of weights over [0, 1].
    Sweep,
    /// Evaluate the fitted line at --value.
    Predict,
    /// Find the x at which the fitted line reaches --value.
    Inverse,
    /// Print the sufficient statistics only.
    Stats,
    /// Cross-check the fit against golden-section search and finite differences.
    Verify,
}

#[derive(Debug, Parser)]
#[command(name = "dualfit", version, about)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,

    /// CSV file, or '-' for standard input.
    #[arg(long, default_value = "-")]
    pub input: String,

    /// Weight of the vertical errors, in [0, 1].
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub gamma: f64,

    /// Grid size for sweep, endpoints included.
    #[arg(long, default_value_t = 101)]
    pub steps: usize,

    /// x column: zero-based index or header name (default "x", else 0).
    #[arg(long)]
    pub x_col: Option<ColumnSpec>,

    /// y column: zero-based index or header name (default "y", else 1).
    #[arg(long)]
    pub y_col: Option<ColumnSpec>,

    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Fit negatively correlated data on (x, -y) and negate the slope.
    #[arg(long)]
    pub reflect_negative: bool,

    /// Input for predict / inverse.
    #[arg(long, allow_negative_numbers = true)]
    pub value: Option<f64>,

    /// Relative slope agreement required by verify.
    #[arg(long, default_value_t = dualfit::oracle::SLOPE_AGREEMENT)]
    pub verify_tol: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            if let commands::CliError::Verification { output, .. } = &err {
                print!("{output}");
            }
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

use std::fs::File;
use std::io::{self, Read};

use dualfit::oracle::{verify, GRADIENT_AGREEMENT};
use dualfit::{
    compute_stats, fit_stats, slope_bounds, Dataset, FitConfig, FittedLine,
    NegativeCorrelationPolicy, SufficientStats,
};
use thiserror::Error;

use crate::input::{parse_csv, InputError};
use crate::report::{render_record, render_records, Field, Record};
use crate::{Cli, Command};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(#[from] InputError),
    #[error("InvalidInput: {0}")]
    Usage(String),
    #[error("{0}")]
    Fit(#[from] dualfit::Error),
    #[error("{message}")]
    Verification { output: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Usage(_) => 2,
            CliError::Fit(dualfit::Error::InvalidInput(_)) => 2,
            CliError::Fit(_) => 3,
            CliError::Verification { .. } => 4,
        }
    }
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    if !(0.0..=1.0).contains(&cli.gamma) {
        return Err(CliError::Usage(format!(
            "--gamma must lie in [0, 1], got {}",
            cli.gamma
        )));
    }
    if cli.steps < 2 {
        return Err(CliError::Usage(format!(
            "--steps must be at least 2, got {}",
            cli.steps
        )));
    }
    let data = load(cli)?;
    let stats = compute_stats(&data)?;
    match cli.command {
        Command::Stats => Ok(render_record(&stats_record(&stats), cli.format)),
        Command::Fit => {
            let line = fit_stats(&stats, &config(cli, cli.gamma))?;
            Ok(render_record(&fit_record(&stats, &line)?, cli.format))
        }
        Command::Sweep => sweep(cli, &stats),
        Command::Predict => {
            let x = value(cli)?;
            let line = fit_stats(&stats, &config(cli, cli.gamma))?;
            Ok(scalar(cli, ("x", x), ("y", line.predict(x))))
        }
        Command::Inverse => {
            let y = value(cli)?;
            let line = fit_stats(&stats, &config(cli, cli.gamma))?;
            Ok(scalar(cli, ("y", y), ("x", line.inverse_predict(y)?)))
        }
        Command::Verify => verify_command(cli, &stats),
    }
}

fn load(cli: &Cli) -> Result<Dataset, InputError> {
    let source: Box<dyn Read> = if cli.input == "-" {
        Box::new(io::stdin().lock())
    } else {
        let file = File::open(&cli.input)
            .map_err(|e| InputError::Io(format!("cannot open {}: {e}", cli.input)))?;
        Box::new(file)
    };
    parse_csv(source, cli.x_col.as_ref(), cli.y_col.as_ref())
}

fn config(cli: &Cli, gamma: f64) -> FitConfig {
    let policy = if cli.reflect_negative {
        NegativeCorrelationPolicy::Reflect
    } else {
        NegativeCorrelationPolicy::Error
    };
    FitConfig::new(gamma).with_policy(policy)
}

fn value(cli: &Cli) -> Result<f64, CliError> {
    cli.value
        .ok_or_else(|| CliError::Usage("--value is required for predict and inverse".into()))
}

fn stats_record(s: &SufficientStats) -> Record {
    vec![
        ("n", Field::Count(s.n)),
        ("x_bar", Field::Num(s.x_bar)),
        ("y_bar", Field::Num(s.y_bar)),
        ("s_xx", Field::Num(s.s_xx)),
        ("s_yy", Field::Num(s.s_yy)),
        ("s_xy", Field::Num(s.s_xy)),
        ("rho", Field::Num(s.rho)),
    ]
}

/// Slope bounds in the coordinates of the returned line.
fn line_bounds(stats: &SufficientStats, line: &FittedLine) -> dualfit::Result<(f64, f64)> {
    if line.reflected {
        let (lo, hi) = slope_bounds(&stats.reflect_y())?;
        Ok((-hi, -lo))
    } else {
        slope_bounds(stats)
    }
}

fn fit_record(stats: &SufficientStats, line: &FittedLine) -> dualfit::Result<Record> {
    let (lo, hi) = line_bounds(stats, line)?;
    let mut record = stats_record(stats);
    record.extend([
        ("gamma", Field::Num(line.gamma)),
        ("beta0", Field::Num(line.beta0)),
        ("beta1", Field::Num(line.beta1)),
        ("sse", Field::Num(line.sse)),
        ("bound_lower", Field::Num(lo)),
        ("bound_upper", Field::Num(hi)),
        ("candidate_roots", Field::Nums(line.candidate_roots.clone())),
        ("root_residual", Field::Num(line.selected_root_residual)),
        ("reflected", Field::Flag(line.reflected)),
        ("bound_violation", Field::MaybeNum(line.bound_violation)),
    ]);
    Ok(record)
}

fn sweep(cli: &Cli, stats: &SufficientStats) -> Result<String, CliError> {
    let last = (cli.steps - 1) as f64;
    let rows = (0..cli.steps)
        .map(|i| {
            let gamma = i as f64 / last;
            let line = fit_stats(stats, &config(cli, gamma))?;
            Ok(vec![
                ("gamma", Field::Num(gamma)),
                ("beta1", Field::Num(line.beta1)),
                ("beta0", Field::Num(line.beta0)),
                ("sse", Field::Num(line.sse)),
                ("root_residual", Field::Num(line.selected_root_residual)),
            ])
        })
        .collect::<Result<Vec<Record>, CliError>>()?;
    Ok(render_records(&rows, cli.format))
}

fn scalar(cli: &Cli, input: (&'static str, f64), output: (&'static str, f64)) -> String {
    use crate::report::Format;
    match cli.format {
        Format::Table => format!("{}\n", crate::output::fmt_num(output.1)),
        format => render_record(
            &vec![
                (input.0, Field::Num(input.1)),
                (output.0, Field::Num(output.1)),
            ],
            format,
        ),
    }
}

fn verify_command(cli: &Cli, stats: &SufficientStats) -> Result<String, CliError> {
    let report = verify(stats, &config(cli, cli.gamma))?;
    let tolerance = cli.verify_tol * (1.0 + report.quartic_slope.abs());
    let passed = report.passes(cli.verify_tol, GRADIENT_AGREEMENT);
    let record = vec![
        ("gamma", Field::Num(cli.gamma)),
        ("quartic_slope", Field::Num(report.quartic_slope)),
        ("oracle_slope", Field::Num(report.oracle_slope)),
        ("abs_gap", Field::Num(report.abs_gap)),
        ("gap_tolerance", Field::Num(tolerance)),
        ("profile_evals", Field::Count(report.profile_evals)),
        ("bracket_lower", Field::Num(report.bracket.0)),
        ("bracket_upper", Field::Num(report.bracket.1)),
        (
            "gradient_max_rel_err",
            Field::Num(report.gradient_max_rel_err),
        ),
        ("passed", Field::Flag(passed)),
    ];
    let output = render_record(&record, cli.format);
    if passed {
        Ok(output)
    } else {
        Err(CliError::Verification {
            output,
            message: format!(
                "VerificationFailed: quartic slope {} vs oracle slope {} (gap {:e}, tolerance {:e}; gradient error {:e})",
                report.quartic_slope,
                report.oracle_slope,
                report.abs_gap,
                tolerance,
                report.gradient_max_rel_err
            ),
        })
    }
}

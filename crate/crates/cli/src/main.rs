use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use feqlab_core::EquationTag;

mod commands;
mod failure;
mod render;

/// Solve and verify Van Vleck and d'Alembert type functional equations on
/// finite semigroups.
#[derive(Debug, Parser)]
#[command(name = "feqlab", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Equation tag.
    #[arg(long, global = true, value_parser = parse_tag)]
    pub eq: Option<EquationTag>,
    /// Semigroup JSON.
    #[arg(long, global = true)]
    pub sg: Option<PathBuf>,
    /// Involutive morphism JSON.
    #[arg(long, global = true)]
    pub sigma: Option<PathBuf>,
    /// Measure JSON (the measure of the equation, also used as upsilon).
    #[arg(long, global = true)]
    pub mu: Option<PathBuf>,
    /// Function JSON.
    #[arg(long, global = true)]
    pub f: Option<PathBuf>,
    /// Second function JSON, for the two-function equations.
    #[arg(long, global = true)]
    pub g: Option<PathBuf>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Perturbation radii are drawn uniformly from [0, R].
    #[arg(long, global = true)]
    pub radius: Option<f64>,
    #[arg(long, global = true)]
    pub starts: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Override the equality tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Add the identity battery to `verify`.
    #[arg(long, global = true)]
    pub battery: bool,
    /// Evaluate residuals even when a standing hypothesis fails.
    #[arg(long, global = true)]
    pub force: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output directory for `fixtures`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Check that a table is associative.
    Validate,
    /// Center, orbits, involutive morphisms and characters.
    Analyze,
    /// Closed-form solution set of an equation.
    Solve,
    /// Residual of a given function.
    Verify,
    /// Perturbation campaign for the superstability dichotomy.
    Stability,
    /// Compare closed-form solutions with a numerical root finder.
    Oracle,
    /// Write the bundled fixture files.
    Fixtures,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

fn parse_tag(s: &str) -> Result<EquationTag, String> {
    s.parse::<EquationTag>().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(failure::USAGE),
            };
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => {
            let text = match cli.format {
                Format::Json => feqlab_core::wire::to_json(&outcome.report),
                Format::Table => render::table(&outcome.report),
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(failure::IO);
            }
            ExitCode::from(outcome.code)
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}

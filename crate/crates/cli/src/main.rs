//! Command-line front end for the twomode library.
//!
//! Commands read a JSON payload (inline or from a file), validate it, and
//! emit JSON or CSV. Exit codes: 0 success, 2 input/schema error, 3
//! numerical-validation failure — scripts can tell user error from math
//! failure. Identical input bytes always produce identical output bytes.

mod commands;
mod schema;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug)]
pub enum CmdError {
    /// Malformed payload or invalid parameters (exit 2).
    Schema(String),
    /// Input parsed but failed numerical validation (exit 3).
    Validation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "twomode",
    version,
    about = "Two-mode Gaussian optics: squeezing classification, state evolution, \
             detection scans, and passive-optics synthesis",
    after_help = "Quadrature order is (q1, q2, p1, p2); vacuum variance is 1/2; all \
                  angles are radians. The heterodyne phase psi ranges over [0, 4*pi)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Read the JSON payload from this file.
    #[arg(long, value_name = "PATH", conflicts_with = "inline")]
    input: Option<PathBuf>,
    /// Inline JSON payload.
    #[arg(long, value_name = "JSON")]
    inline: Option<String>,
    /// Write output here instead of stdout. Nothing is written on failure.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Output format (default: json, except scan-heterodyne and octant: csv).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Accepted for interface stability; all computations are deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Validation tolerance for symplectic/unitary/symmetry input checks.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a symplectic matrix or a squeeze-vector pair into its
    /// passive-equivalence class (a, b).
    Classify(CommonArgs),
    /// Build a squeezed coherent or thermal state and report its squeezing
    /// verdict.
    State(CommonArgs),
    /// Scan the heterodyne quadrature variance over the phase psi.
    #[command(name = "scan-heterodyne")]
    ScanHeterodyne(CommonArgs),
    /// Synthesize Mach-Zehnder or wave-plate settings for a 2x2 unitary.
    Synth(CommonArgs),
    /// Tabulate the class octant a >= b >= 0 as (a, b, character, flag) rows.
    Octant(CommonArgs),
}

fn load_payload(args: &CommonArgs) -> Result<String, CmdError> {
    match (&args.input, &args.inline) {
        (Some(path), None) => std::fs::read_to_string(path)
            .map_err(|e| CmdError::Schema(format!("cannot read {}: {e}", path.display()))),
        (None, Some(json)) => Ok(json.clone()),
        _ => Err(CmdError::Schema(
            "provide the payload with exactly one of --input PATH or --inline JSON".to_string(),
        )),
    }
}

fn run(command: &Command) -> Result<(), CmdError> {
    let (args, default_format) = match command {
        Command::Classify(a) => (a, Format::Json),
        Command::State(a) => (a, Format::Json),
        Command::ScanHeterodyne(a) => (a, Format::Csv),
        Command::Synth(a) => (a, Format::Json),
        Command::Octant(a) => (a, Format::Csv),
    };
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        return Err(CmdError::Schema(format!(
            "--tol must be positive and finite (got {})",
            args.tol
        )));
    }
    let format = args.format.unwrap_or(default_format);
    let payload = load_payload(args)?;

    let rendered = match command {
        Command::Classify(_) => commands::classify(&payload, format, args.tol)?,
        Command::State(_) => commands::state(&payload, format)?,
        Command::ScanHeterodyne(_) => commands::scan_heterodyne(&payload, format, args.tol)?,
        Command::Synth(_) => commands::synth(&payload, format, args.tol)?,
        Command::Octant(_) => commands::octant(&payload, format)?,
    };

    match &args.output {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CmdError::Schema(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::Schema(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CmdError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

//! Command-line front end for `completion-lab`: parses group, field and
//! tower specifications, dispatches to the computation crate and renders
//! deterministic reports.

pub mod audit;
pub mod commands;
pub mod report;

use std::io::Write;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use completion_lab::groups::DEFAULT_ELEMENT_CAP;

pub use commands::{execute, Invocation};
pub use report::{Claim, Report, Verdict, SCHEMA};

pub const CAP_VARIABLE: &str = "COMPLETION_LAB_MAX_ELEMENTS";

#[derive(Debug, Parser)]
#[command(name = "completion-lab", version, about = "Exact unipotent completions and related finite-group computations")]
pub struct Cli {
    /// Emit the report as JSON
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Invocation,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] completion_lab::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) if e.is_resource_limit() => 3,
            CliError::Core(completion_lab::Error::SpecError(_) | completion_lab::Error::UnsupportedField(_)) => 2,
            CliError::Core(_) => 1,
        }
    }
}

/// Parses a subcommand and its flags, without the program name.
pub fn parse_invocation(argv: &[String]) -> Result<Invocation, clap::Error> {
    let args = std::iter::once("completion-lab".to_string()).chain(argv.iter().cloned());
    Cli::try_parse_from(args).map(|c| c.command)
}

/// The enumeration cap, overridable through the environment.
pub fn element_cap() -> Result<usize, CliError> {
    match std::env::var(CAP_VARIABLE) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{CAP_VARIABLE} must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_ELEMENT_CAP),
    }
}

pub fn render(report: &Report, json: bool) -> String {
    match (json, report.command.as_str()) {
        (true, _) => report.to_json(),
        (false, "audit-all") => audit::audit_table(report),
        (false, _) => report.to_text(),
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    2
                }
            };
        }
    };
    let cap = match element_cap() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let start = Instant::now();
    match execute(&cli.command, cap) {
        Ok(report) => {
            let _ = stdout.write_all(render(&report, cli.json).as_bytes());
            let _ = writeln!(stderr, "wall time: {:.3} s", start.elapsed().as_secs_f64());
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

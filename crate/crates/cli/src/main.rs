//! `bratteli`: batch front end for the measure library.
//!
//! Exit codes: 0 definite positive or complete result, 1 definite
//! negative, 2 input error, 3 undetermined, 4 unsupported input or
//! exhausted budget, 5 certificate failure.

mod commands;
mod document;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error(transparent)]
    Library(#[from] bratteli::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use bratteli::Error as E;
        match self {
            CliError::Input(_) => 2,
            CliError::Library(e) => match e {
                E::InvalidDiagram(_) | E::Dimension { .. } | E::Precondition(_) | E::FieldMismatch => 2,
                E::CertificateFailure { .. } => 5,
                E::EnumerationTooLarge { .. }
                | E::UnsupportedSpectrum(_)
                | E::UnsupportedField(_)
                | E::Unsupported(_)
                | E::Density(_)
                | E::NotApplicable(_) => 4,
            },
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "bratteli", version, about = "Exact invariant measures on Bratteli diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classes, Perron roots and ergodic measures of a diagram.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Clopen values set of a measure, with optional membership queries.
    Svalues {
        file: PathBuf,
        /// Class label (from 1) of the measure; defaults to the full measure.
        #[arg(long)]
        measure: Option<usize>,
        /// Values to test: `p/q`, or `[c0, c1, ...]` for `c0 + c1 λ + ...`.
        #[arg(long, num_args = 1..)]
        member: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Goodness verdict, with a witness when bad.
    Good {
        file: PathBuf,
        #[arg(long)]
        measure: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Homeomorphism verdict for two measures.
    Homeo {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long)]
        measure_a: Option<usize>,
        #[arg(long)]
        measure_b: Option<usize>,
        /// Also report weak homeomorphism and the scale found.
        #[arg(long)]
        weak: bool,
        #[arg(long)]
        json: bool,
    },
    /// Finite-depth back-and-forth certificate, as JSON.
    Certify {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long)]
        measure_a: Option<usize>,
        #[arg(long)]
        measure_b: Option<usize>,
    },
    /// Odometer diagram whose measure has the given group-like values set.
    Construct {
        /// Comma-separated rational generators, e.g. "1, 1/6".
        #[arg(long)]
        grouplike: String,
        /// Scaling factor λ; defaults to the lcm of the generator denominators.
        #[arg(long)]
        lambda: Option<i64>,
    },
    /// Class condensation DAG in DOT format.
    Dot { file: PathBuf },
    /// Validates a document and prints its canonical form.
    Canonical { file: PathBuf },
}

fn run(cli: Cli) -> Result<commands::Outcome, CliError> {
    let budget = commands::Budget::from_env()?;
    match cli.command {
        Command::Analyze { file, json } => commands::analyze(&file, json),
        Command::Svalues { file, measure, member, json } => commands::svalues(&file, measure, &member, json, &budget),
        Command::Good { file, measure, json } => commands::good(&file, measure, json, &budget),
        Command::Homeo { file_a, file_b, measure_a, measure_b, weak, json } => {
            commands::homeo(&file_a, &file_b, measure_a, measure_b, weak, json, &budget)
        }
        Command::Certify { file_a, file_b, depth, measure_a, measure_b } => {
            commands::certify(&file_a, &file_b, depth, measure_a, measure_b, &budget)
        }
        Command::Construct { grouplike, lambda } => commands::construct(&grouplike, lambda),
        Command::Dot { file } => commands::dot(&file),
        Command::Canonical { file } => commands::canonical(&file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()) {
                Ok(()) => ExitCode::from(out.code),
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::from(out.code),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::FAILURE
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

//! Command-line front end: problem files in, fiber reports out.

pub mod commands;
pub mod problem;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use fiberideals::AlgebraError;
use thiserror::Error;

pub use problem::{FieldSpec, Problem, ProblemFile};
pub use report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: unknown name `{name}`")]
    UnknownName {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("line {line}, column {column}: {source}")]
    At {
        line: usize,
        column: usize,
        source: AlgebraError,
    },
    #[error("no ideal named `{0}`")]
    UnknownIdeal(String),
    #[error("no point named `{0}`")]
    UnknownPoint(String),
    #[error("no matrix named `{0}`")]
    UnknownMatrix(String),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Algebra(e) | CliError::At { source: e, .. } if !e.is_validation() => 3,
            _ => 2,
        }
    }

    /// Stable identifier for `--json` error output.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Syntax { .. } => "syntax",
            CliError::UnknownName { .. }
            | CliError::UnknownIdeal(_)
            | CliError::UnknownPoint(_)
            | CliError::UnknownMatrix(_) => "unknown-name",
            CliError::Io { .. } => "io",
            CliError::Usage(_) => "usage",
            CliError::Algebra(e) | CliError::At { source: e, .. } => algebra_code(e),
        }
    }
}

fn algebra_code(e: &AlgebraError) -> &'static str {
    match e {
        AlgebraError::NotPrime(_) => "not-prime",
        AlgebraError::NoSqrtMinusOne(_) => "no-sqrt-minus-one",
        AlgebraError::InvalidRing(_) => "invalid-ring",
        AlgebraError::RingMismatch => "ring-mismatch",
        AlgebraError::LengthMismatch { .. } => "length-mismatch",
        AlgebraError::Parse { .. } => "syntax",
        AlgebraError::NotHomogeneous(_) => "not-homogeneous",
        AlgebraError::MixedDegrees(_) => "mixed-degrees",
        AlgebraError::ZeroIdeal => "zero-ideal",
        AlgebraError::CodimensionTooSmall(_) => "codimension-too-small",
        AlgebraError::ZeroPoint => "zero-point",
        AlgebraError::BasePoint => "base-point",
        AlgebraError::InvalidArgument(_) => "invalid-argument",
        AlgebraError::NotSyzygy(_) => "not-syzygy",
        AlgebraError::InhomogeneousEntry { .. } => "inhomogeneous-entry",
        AlgebraError::NotLinear => "not-linear",
        AlgebraError::Unsupported(_) => "unsupported",
        AlgebraError::SamplingExhausted(_) => "sampling-exhausted",
        AlgebraError::TrialDisagreement(_) => "trial-disagreement",
        AlgebraError::Inconsistent(_) => "inconsistent",
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Grevlex,
    Lex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FiberKind {
    Row,
    Corr,
    Morphism,
    All,
}

/// Fibers, analytic spread and birationality of rational maps.
#[derive(Debug, Parser)]
#[command(name = "fiberideals", version)]
pub struct Cli {
    /// Problem file.
    pub problem: PathBuf,

    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Largest power tried while the correspondence chain stabilizes.
    #[arg(long, global = true, default_value_t = fiberideals::fibers::DEFAULT_MAX_POWER)]
    pub max_power: u32,

    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Grevlex)]
    pub order: OrderArg,

    /// Exit with status 4 when a correspondence chain is not confirmed.
    #[arg(long, global = true)]
    pub strict: bool,

    /// Ideal defining the map.
    #[arg(long, global = true, default_value = "I")]
    pub ideal: String,

    /// Include wall-clock time in the report (breaks byte-for-byte reproducibility).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis.
    Gb { name: Option<String> },
    /// `A : B`.
    Colon { left: String, right: String },
    /// `A : B^∞`.
    Saturate { left: String, right: String },
    /// Codimension.
    Codim { name: Option<String> },
    /// Fiber ideals over a target point.
    Fiber {
        #[arg(long)]
        at: String,
        #[arg(long, value_enum, default_value_t = FiberKind::All)]
        kind: FiberKind,
    },
    /// Analytic spread from sampled fibers, checked against elimination.
    Spread {
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Randomized birationality test, or a certificate at one point.
    Birational {
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long)]
        certify: Option<String>,
    },
    /// Lower bound on the analytic spread from a matrix of syzygies.
    Hks {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        at: String,
    },
    /// Linearity of generalized rows of the minimal presentation of a power.
    LinearRows {
        #[arg(long, default_value_t = 1)]
        power: u32,
        #[arg(long, default_value_t = 25)]
        samples: usize,
    },
    /// Presentation of a power whose rows belong to points.
    PointPresentation {
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
}

impl Command {
    /// Canonical spelling, echoed in reports.
    pub fn echo(&self) -> String {
        match self {
            Command::Gb { name } => join(&["gb", name.as_deref().unwrap_or("")]),
            Command::Colon { left, right } => format!("colon {left} {right}"),
            Command::Saturate { left, right } => format!("saturate {left} {right}"),
            Command::Codim { name } => join(&["codim", name.as_deref().unwrap_or("")]),
            Command::Fiber { at, kind } => {
                let kind = kind.to_possible_value().expect("no skipped variants");
                format!("fiber --at {at} --kind {}", kind.get_name())
            }
            Command::Spread { trials } => format!("spread --trials {trials}"),
            Command::Birational { trials, certify } => match certify {
                Some(q) => format!("birational --trials {trials} --certify {q}"),
                None => format!("birational --trials {trials}"),
            },
            Command::Hks { matrix, at } => format!("hks --matrix {matrix} --at {at}"),
            Command::LinearRows { power, samples } => {
                format!("linear-rows --power {power} --samples {samples}")
            }
            Command::PointPresentation { power } => format!("point-presentation --power {power}"),
        }
    }
}

fn join(parts: &[&str]) -> String {
    parts
        .iter()
        .filter(|p| !p.is_empty())
        .copied()
        .collect::<Vec<_>>()
        .join(" ")
}

/// Everything a process would print, plus its exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    match commands::execute(&cli) {
        Ok((report, code)) => Outcome {
            stdout: if cli.json {
                report.to_json()
            } else {
                report.to_text()
            },
            stderr: String::new(),
            code,
        },
        Err(e) => {
            let stdout = if cli.json {
                let value = serde_json::json!({
                    "error": { "code": e.code(), "message": e.to_string() }
                });
                format!("{}\n", serde_json::to_string_pretty(&value).expect("json"))
            } else {
                String::new()
            };
            Outcome {
                stdout,
                stderr: format!("error: {e}\n"),
                code: e.exit_code(),
            }
        }
    }
}

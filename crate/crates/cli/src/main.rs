//! `qpencil`: command-line front end for the pencil-of-quadrics analyses.
//!
//! Exit codes: 0 on success, 2 on a precondition error (bad input, singular
//! variety, size guard), 3 when an internal consistency audit fails.

mod commands;
mod input;
mod report;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::input::PencilFile;
use crate::report::{input_hash, Report, Status};

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input.
    Input(String),
    Core(qpencil::Error),
    /// Two independent computations disagree.
    Audit(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Audit(m) => write!(f, "audit failed: {m}"),
        }
    }
}

impl From<qpencil::Error> for CliError {
    fn from(e: qpencil::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn status(&self) -> Status {
        match self {
            CliError::Core(e) if e.is_internal() => Status::InternalFailure,
            CliError::Audit(_) => Status::InternalFailure,
            _ => Status::PreconditionError,
        }
    }
}

#[derive(Parser)]
#[command(name = "qpencil", version, about = "Exact analyses of pencils of quadrics")]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock time in the report (output is then no longer
    /// byte-identical across runs).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Discriminant, smoothness, singular points; over Q also the real
    /// isotopy class, maximal real subspaces and, for n = 5, the verdict.
    Analyze { file: PathBuf },
    /// Enumerate the F_q-lines on X.
    Lines {
        file: PathBuf,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Point counts, L-polynomial and Jacobian order of the genus-2 curve.
    Zeta {
        file: PathBuf,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Compare the number of F_q-lines with the Jacobian order.
    Torsor {
        file: PathBuf,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Project X from a line on it, given as [[u...], [v...]].
    ProjectLine {
        file: PathBuf,
        #[arg(long)]
        line: String,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Double projection from a point of X, given as a JSON vector.
    DoubleProject {
        file: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long)]
        q: Option<u64>,
    },
    /// The toric example x0x1 = x2x3 = x4x5 over F_q.
    Toric {
        #[arg(long)]
        q: u64,
    },
    /// Rationality of the torus split by a subgroup of H.
    Torus {
        #[arg(long)]
        generators: PathBuf,
    },
    /// Exhaustive check of Amer's theorem for f = q0, g = q1.
    Amer {
        file: PathBuf,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        deg: usize,
    },
    /// Determinant identity and fiber tangency for the degenerate bundle.
    Hpt {
        #[arg(long)]
        g: String,
    },
    /// Real isotopy classes in P^n.
    Classes {
        #[arg(long)]
        n: usize,
    },
}

fn read(path: &Path, files: &mut Vec<Vec<u8>>) -> Result<String, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    files.push(bytes.clone());
    String::from_utf8(bytes).map_err(|_| CliError::Input(format!("{}: not UTF-8", path.display())))
}

fn pencil(path: &Path, files: &mut Vec<Vec<u8>>) -> Result<PencilFile, CliError> {
    PencilFile::parse(&read(path, files)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn arguments(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().filter(|(_, v)| !v.is_null()).map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn path_value(p: &Path) -> Value {
    json!(p.display().to_string())
}

/// Runs one subcommand; returns its name, echoed arguments, input bytes
/// and payload.
fn dispatch(command: &Command, files: &mut Vec<Vec<u8>>) -> (String, Map<String, Value>, Result<Value, CliError>) {
    use Command::*;
    let (name, args) = match command {
        Analyze { file } => ("analyze", arguments(&[("file", path_value(file))])),
        Lines { file, q } => ("lines", arguments(&[("file", path_value(file)), ("q", json!(q))])),
        Zeta { file, q } => ("zeta", arguments(&[("file", path_value(file)), ("q", json!(q))])),
        Torsor { file, q } => ("torsor", arguments(&[("file", path_value(file)), ("q", json!(q))])),
        ProjectLine { file, line, q } => {
            ("project-line", arguments(&[("file", path_value(file)), ("line", json!(line)), ("q", json!(q))]))
        }
        DoubleProject { file, point, q } => {
            ("double-project", arguments(&[("file", path_value(file)), ("point", json!(point)), ("q", json!(q))]))
        }
        Toric { q } => ("toric", arguments(&[("q", json!(q))])),
        Torus { generators } => ("torus", arguments(&[("generators", path_value(generators))])),
        Amer { file, q, deg } => {
            ("amer", arguments(&[("file", path_value(file)), ("q", json!(q)), ("deg", json!(deg))]))
        }
        Hpt { g } => ("hpt", arguments(&[("g", json!(g))])),
        Classes { n } => ("classes", arguments(&[("n", json!(n))])),
    };
    let result = match command {
        Analyze { file } => pencil(file, files).and_then(|p| commands::analyze(&p)),
        Lines { file, q } => pencil(file, files).and_then(|p| commands::lines(&p, *q)),
        Zeta { file, q } => pencil(file, files).and_then(|p| commands::zeta(&p, *q)),
        Torsor { file, q } => pencil(file, files).and_then(|p| commands::torsor(&p, *q)),
        ProjectLine { file, line, q } => pencil(file, files).and_then(|p| commands::project_line(&p, line, *q)),
        DoubleProject { file, point, q } => pencil(file, files).and_then(|p| commands::double_project(&p, point, *q)),
        Toric { q } => commands::toric(*q),
        Torus { generators } => read(generators, files).and_then(|t| commands::torus(&t)),
        Amer { file, q, deg } => pencil(file, files).and_then(|p| commands::amer(&p, *q, *deg)),
        Hpt { g } => commands::hpt(g),
        Classes { n } => commands::classes(*n),
    };
    (name.to_string(), args, result)
}

/// Caps rayon's pool from `QPENCIL_THREADS`.
fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("QPENCIL_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("QPENCIL_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("qpencil: {e}");
        return ExitCode::from(Status::PreconditionError.exit_code());
    }
    let start = Instant::now();
    let mut files = Vec::new();
    let (command, arguments, result) = dispatch(&cli.command, &mut files);
    let elapsed = start.elapsed();
    let (status, payload, error) = match result {
        Ok(p) => (Status::Ok, Some(p), None),
        Err(e) => (e.status(), None, Some(e.to_string())),
    };
    let report = Report {
        tool: "qpencil",
        version: env!("CARGO_PKG_VERSION"),
        input_sha256: input_hash(&files, &arguments),
        command,
        arguments,
        status,
        payload,
        error,
        timing_ms: cli.timing.then_some(elapsed.as_millis() as u64),
    };
    // A closed pipe downstream is not an error of the analysis.
    let text = if cli.json { report.to_json() + "\n" } else { report.to_text() };
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    if let Some(e) = &report.error {
        eprintln!("qpencil {}: {e}", report.command);
    }
    ExitCode::from(status.exit_code())
}

//! Batch task runner: reads a task file, executes each task in order and
//! renders a human table or one JSON record per task.

pub mod ops;
pub mod report;
pub mod taskfile;

use num_rational::BigRational;
use thiserror::Error;

pub use ops::{KEYWORDS, OPERATIONS};
pub use report::{render, Format, Status, TaskReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error{}: {message}", at(*.line))]
    Parse {
        line: Option<usize>,
        message: String,
    },
    #[error("validation error{}: {message}", at(*.line))]
    Validation {
        line: Option<usize>,
        message: String,
    },
    #[error("cannot read task file: {0}")]
    Io(#[from] std::io::Error),
}

fn at(line: Option<usize>) -> String {
    line.map(|l| format!(" at line {l}")).unwrap_or_default()
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// Command-line overrides; each one replaces the corresponding task parameter.
#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub window: Option<(BigRational, BigRational)>,
    pub depth: Option<u32>,
    pub precision: Option<u32>,
    pub strict_undetermined: bool,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub reports: Vec<TaskReport>,
    pub exit_code: i32,
}

/// Parses `source`, runs every task sequentially, and computes the exit code:
/// 0 when nothing failed or errored, 1 otherwise. Undetermined counts as a
/// failure only under `strict_undetermined`.
pub fn run(source: &str, flags: &Flags) -> Result<Outcome, CliError> {
    let ws = taskfile::load(source)?;
    let mut reports = Vec::with_capacity(ws.tasks.len());
    for (n, task) in ws.tasks.iter().enumerate() {
        reports.push(ops::execute(&ws, n, task, flags)?);
    }
    let failed = reports.iter().any(|r| match r.status {
        Status::Fail | Status::Error => true,
        Status::Undetermined => flags.strict_undetermined,
        Status::Ok | Status::Pass => false,
    });
    Ok(Outcome {
        reports,
        exit_code: i32::from(failed),
    })
}

/// Parses a weight window `LO..HI` with rational endpoints.
pub fn parse_window(s: &str) -> Result<(BigRational, BigRational), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("window `{s}` is not of the form LO..HI"))?;
    let parse = |t: &str| gradwise::grading::parse_rational(t.trim()).map_err(|e| e.to_string());
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if lo > hi {
        return Err(format!("window `{s}` is empty"));
    }
    Ok((lo, hi))
}

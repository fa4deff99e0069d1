//! Library half of the `divlab` command-line tool: task-file schema,
//! runner, and report emission. The binary in `main.rs` is a thin wrapper.

pub mod report;
pub mod runner;
pub mod taskfile;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Exit codes: 0 ok, 1 runtime error in some task, 2 parse error (decided
/// before any task runs), 3 inapplicable theorem under --strict, 4 a
/// divisibility violation (a counterexample, surfaced maximally loudly).
pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NOT_APPLICABLE: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;

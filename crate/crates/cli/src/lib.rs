//! File formats and subcommands behind the `gfc` binary.
//!
//! Exit codes are part of the interface: 0 success (including a "not a
//! three-term recurrence" answer), 2 unparsable input, 3 violated
//! precondition, 4 a requested check failed, 1 I/O trouble.

pub mod commands;
pub mod exact;
pub mod resultdoc;
pub mod specfile;

use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_CHECK_FAILED: i32 = 4;

/// Environment variable capping the truncation order.
pub const MAX_ORDER_VAR: &str = "GFC_MAX_ORDER";
pub const DEFAULT_MAX_ORDER: usize = 256;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Precondition(_) => EXIT_PRECONDITION,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Reads `GFC_MAX_ORDER`, falling back to the default on absence.
pub fn max_order() -> Result<usize, CliError> {
    match std::env::var(MAX_ORDER_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("{MAX_ORDER_VAR}={v} is not an integer"))),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &std::path::Path, contents: &str) -> Result<(), CliError> {
    use std::io::Write;
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => std::path::PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

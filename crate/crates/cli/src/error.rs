use std::path::PathBuf;

use thiserror::Error;

/// A malformed line in a text instance.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

/// Anything wrong with what the user handed us.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Instance(#[from] qapbound_core::Error),
    #[error("manifest: {0}")]
    Manifest(String),
}

impl InputError {
    pub fn parse(path: impl Into<PathBuf>, source: ParseError) -> Self {
        InputError::Parse { path: path.into(), source }
    }
}

pub(crate) fn read(path: &std::path::Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io { path: path.to_path_buf(), source })
}

impl InputError {
    /// 1 for bad input, 2 when the solver broke one of its own invariants.
    pub fn exit_code(&self) -> i32 {
        use qapbound_core::Error as E;
        match self {
            InputError::Instance(E::Infeasible(_) | E::DualInfeasible { .. }) => 2,
            _ => 1,
        }
    }
}

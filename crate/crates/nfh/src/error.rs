//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by corpus ingestion, model training and inference.
#[derive(Debug, Error)]
pub enum NfhError {
    /// Malformed input data (bad JSON, bad vector file, bad model file).
    #[error("format error{}: {msg}", fmt_line(.line))]
    Format { line: Option<usize>, msg: String },

    /// Structurally valid input that violates a documented invariant.
    #[error("validation error in `{field}`: {msg}")]
    Validation { field: String, msg: String },

    /// Inputs that cannot be processed as requested (missing trees, gold
    /// labels out of range, mismatched prediction/gold lengths, ...).
    #[error("data error: {0}")]
    Data(String),

    /// Training aborted on a non-finite loss.
    #[error("training diverged at epoch {epoch} on example `{example_id}`: loss is not finite")]
    Diverged { epoch: usize, example_id: String },

    #[error("i/o error{}: {source}", fmt_path(.path))]
    Io {
        path: Option<String>,
        #[source]
        source: std::io::Error,
    },
}

fn fmt_line(line: &Option<usize>) -> String {
    match line {
        Some(n) => format!(" at line {n}"),
        None => String::new(),
    }
}

fn fmt_path(path: &Option<String>) -> String {
    match path {
        Some(p) => format!(" ({p})"),
        None => String::new(),
    }
}

impl NfhError {
    pub fn format(msg: impl Into<String>) -> Self {
        NfhError::Format { line: None, msg: msg.into() }
    }

    pub fn format_at(line: usize, msg: impl Into<String>) -> Self {
        NfhError::Format { line: Some(line), msg: msg.into() }
    }

    pub fn validation(field: impl Into<String>, msg: impl Into<String>) -> Self {
        NfhError::Validation { field: field.into(), msg: msg.into() }
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        NfhError::Io { path: Some(path.into()), source }
    }

    /// Attach a line number to a format error that lacks one.
    pub fn with_line(self, line: usize) -> Self {
        match self {
            NfhError::Format { line: None, msg } => NfhError::Format { line: Some(line), msg },
            other => other,
        }
    }

    /// Process exit code for the CLI: 1 for bad input, 2 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            NfhError::Format { .. } | NfhError::Validation { .. } | NfhError::Data(_) => 1,
            NfhError::Diverged { .. } | NfhError::Io { .. } => 2,
        }
    }
}

impl From<std::io::Error> for NfhError {
    fn from(source: std::io::Error) -> Self {
        NfhError::Io { path: None, source }
    }
}

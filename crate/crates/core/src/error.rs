use std::path::PathBuf;

use thiserror::Error;

/// Errors raised while loading data or resolving anaphora.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: invalid {field}: {message}")]
    Parse {
        line: usize,
        field: &'static str,
        message: String,
    },

    #[error("structural error: {0}")]
    Structural(String),

    #[error("{file}: line {line}: {message}")]
    Lexicon {
        file: String,
        line: usize,
        message: String,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("evaluation error: {0}")]
    Eval(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, field: &'static str, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            field,
            message: message.into(),
        }
    }

    pub(crate) fn lexicon(file: &str, line: usize, message: impl Into<String>) -> Self {
        Error::Lexicon {
            file: file.to_string(),
            line,
            message: message.into(),
        }
    }

    /// Whether the error stems from configuration rather than input data.
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Config(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

use std::fmt;

use thiserror::Error;

/// A malformed text or binary input, with the 1-based line it was found on
/// (0 when the input is not line oriented).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("code has no nonzero codewords")]
    NoNonzeroCodewords,

    #[error("enumeration of 2^{log2_size} words exceeds the cap of 2^{cap}")]
    CapExceeded { log2_size: usize, cap: usize },

    #[error("binary code is not self-orthogonal")]
    NotSelfOrthogonal,

    #[error("code size is 2^{log2_size}, expected 2^{length} for a QSD code")]
    NotQsd { log2_size: usize, length: usize },

    #[error("invalid order {0}: {1}")]
    InvalidOrder(usize, String),

    #[error("not a {kind}: {detail}")]
    NotAScheme { kind: &'static str, detail: String },

    #[error("unsupported construction: {0}")]
    Unsupported(String),

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("{0}")]
    Json(#[from] serde_json::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

use std::path::PathBuf;

use thiserror::Error;

use crate::terms::{Position, Symbol};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid position {0}")]
    InvalidPosition(Position),

    #[error("symbol `{name}` used with arity {first} and {second}")]
    ArityClash {
        name: String,
        first: usize,
        second: usize,
    },

    #[error("symbol {0:?} is not covered by the precedence")]
    UnknownSymbol(Symbol),

    #[error("invalid precedence: {0}")]
    InvalidPrecedence(String),

    #[error("unknown ordering `{0}` (expected one of kbo, nrkbo, lpo, rpo)")]
    UnknownOrdering(String),

    #[error("unknown selection strategy `{0}`")]
    UnknownSelection(String),

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unsupported input at {line}:{column}: {message}")]
    Unsupported {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("index entry not found")]
    NotFound,

    #[error("passive set is empty")]
    EmptyPassive,

    #[error("demodulation exceeded {0} rewrite steps")]
    StepLimit(usize),

    #[error("malformed clause bag: {0}")]
    MalformedBag(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("invalid snapshot: {0}")]
    Snapshot(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

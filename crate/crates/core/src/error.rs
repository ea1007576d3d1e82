use std::path::PathBuf;

use thiserror::Error;

use crate::tournament::Edge;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid tournament: {0}")]
    InvalidTournament(String),

    #[error("edge {0} is not present in the tournament")]
    EdgeNotPresent(Edge),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid fixture parameters: {0}")]
    InvalidFixture(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("path length bound k={k} out of range for n={n}")]
    KOutOfRange { k: usize, n: usize },

    #[error("unknown tournament solution `{0}`")]
    UnknownSolution(String),

    #[error("{what} limited to n <= {guard}, got n={n}")]
    GuardExceeded {
        what: &'static str,
        n: usize,
        guard: usize,
    },

    #[error("no membership flip found with reversal sets of size <= {cap}")]
    UndeterminedAtCap { cap: usize },

    #[error("source and sink must differ")]
    SameEndpoints,

    #[error("invalid generator configuration: {0}")]
    InvalidGenerator(String),

    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{cell}: {source}")]
    InCell {
        cell: String,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    /// Whether the error stems from a size guard rather than bad input.
    pub fn is_guard(&self) -> bool {
        match self {
            Error::GuardExceeded { .. } | Error::UndeterminedAtCap { .. } => true,
            Error::InCell { source, .. } => source.is_guard(),
            _ => false,
        }
    }
}

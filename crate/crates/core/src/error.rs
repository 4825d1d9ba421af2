use std::path::PathBuf;

use crate::ontosim::TaxonomyError;
use crate::preprocess::PreprocessError;
use crate::stats::StatsError;
use crate::strsim::SimError;
use crate::vecsim::VectorError;

/// Errors raised while reading or writing dataset-level files.
#[derive(Debug, thiserror::Error)]
pub enum DataError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{0}: file contains no data rows")]
    Empty(PathBuf),
    #[error("invalid annotation for {id}: {message}")]
    Annotation { id: String, message: String },
    #[error("invalid token sequence: {0}")]
    Token(String),
    #[error("benchmark run has no scores")]
    EmptyRun,
    #[error("run has {scores} scores but the dataset has {pairs} pairs")]
    Misaligned { scores: usize, pairs: usize },
}

impl DataError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        DataError::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        DataError::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}

/// Crate-wide error.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Preprocess(#[from] PreprocessError),
    #[error(transparent)]
    Similarity(#[from] SimError),
    #[error(transparent)]
    Taxonomy(#[from] TaxonomyError),
    #[error(transparent)]
    Vectors(#[from] VectorError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error("{0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

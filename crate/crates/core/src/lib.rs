//! Sentence similarity measures and the evaluation machinery used to
//! benchmark them on biomedical STS datasets.
//!
//! The crate is organised by concern:
//!
//! * [`data`] holds the dataset, annotation and raw-score types and their file formats.
//! * [`preprocess`] is the five-stage sentence pipeline (NER substitution, tokenization,
//!   lower-casing, character filtering, stop-word removal) and its configuration grid.
//! * [`strsim`] provides the string measures, LiBlock among them.
//! * [`ontosim`] provides taxonomy loading, path/IC word measures and the WBSM/UBSM/COM
//!   sentence measures.
//! * [`vecsim`] loads text word-vector files and scores sentences by pooled cosine.
//! * [`stats`] computes correlations, the paired t-test, splits and similarity-error densities.
//! * [`measure`] ties the families together behind a single identifier type.

pub mod data;
pub mod error;
pub mod measure;
pub mod ontosim;
pub mod preprocess;
pub mod stats;
pub mod strsim;
pub mod vecsim;

pub use data::{Annotation, BenchmarkRun, Dataset, RawSentence, SentenceId, SentencePair, Side, TokenSequence};
pub use error::{Error, Result};
pub use measure::{MeasureContext, MeasureId};
pub use preprocess::{PreprocessConfig, Preprocessor, ResourceLists};

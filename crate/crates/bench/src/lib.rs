//! Benchmark harness: runs similarity measures over datasets and preprocessing grids,
//! then writes raw scores, correlation reports, significance matrices, error analyses
//! and throughput figures.

pub mod exec;
pub mod plan;
pub mod report;
pub mod tasks;

use std::path::PathBuf;

pub use exec::{execute, PreprocessCache, RunFailure, RunOk, RunRecord};
pub use plan::{BenchmarkPlan, DatasetSpec, LoadedPlan, MeasureSpec};
pub use report::{best_config, write_outputs, BestConfig, Report, ReportRow};
pub use tasks::{error_analysis_task, significance_task, throughput, ErrorReport, SignificanceOutcome, Throughput};

/// Environment variable that overrides the thread count of a plan.
pub const THREADS_ENV: &str = "STSBENCH_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("plan line {line}: {message}")]
    Plan { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error(transparent)]
    Core(#[from] sts_core::Error),
}

macro_rules! core_from {
    ($($t:ty),+) => {$(
        impl From<$t> for BenchError {
            fn from(e: $t) -> Self {
                BenchError::Core(e.into())
            }
        }
    )+};
}

core_from!(
    sts_core::error::DataError,
    sts_core::preprocess::PreprocessError,
    sts_core::ontosim::TaxonomyError,
    sts_core::vecsim::VectorError,
    sts_core::stats::StatsError
);

impl BenchError {
    pub(crate) fn io(path: impl Into<PathBuf>, e: std::io::Error) -> Self {
        BenchError::Io {
            path: path.into(),
            message: e.to_string(),
        }
    }
}

/// Thread count: `STSBENCH_THREADS` wins over the plan value, which wins over the
/// number of available cores.
pub fn resolve_threads(plan_threads: Option<usize>) -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .or(plan_threads)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs `f` on a dedicated rayon pool of `threads` workers.
pub fn with_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T, BenchError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| BenchError::Invalid(format!("cannot start thread pool: {e}")))?;
    Ok(pool.install(f))
}

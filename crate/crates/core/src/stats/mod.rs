//! Evaluation metrics, significance testing, dataset splitting and error analysis.

mod correlation;
mod errors;
mod significance;
mod split;

pub use correlation::{average_ranks, evaluate, harmonic, pearson, spearman, spearman_closed_form, EvalScores};
pub use errors::{
    bw_nrd0, error_analysis, kde, quantile7, similarity_errors, Bandwidth, ErrorAnalysis, ErrorSample, Kde, KDE_POINTS,
};
pub use significance::{
    paired_ttest_one_sided, significance_matrix, student_t_sf, PValue, SignificanceMatrix, TTest, DEFAULT_ALPHA,
};
pub use split::{split_sizes, uniform_split};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StatsError {
    #[error("length mismatch: {left} vs {right}")]
    Length { left: usize, right: usize },
    #[error("need at least {needed} values, got {found}")]
    TooFew { needed: usize, found: usize },
    #[error("{0} has zero variance; correlation is undefined")]
    ZeroVariance(&'static str),
    #[error("input contains a non-finite value")]
    NonFinite,
    #[error("harmonic score undefined for r = {r}, rho = {rho}")]
    UndefinedHarmonic { r: f64, rho: f64 },
    #[error("paired differences have zero variance")]
    Degenerate,
    #[error("cannot split {n} pairs into {k} parts")]
    BadSplit { n: usize, k: usize },
    #[error("method `{method}` has {found} split scores, expected {expected}")]
    MismatchedSplits {
        method: String,
        expected: usize,
        found: usize,
    },
    #[error("{0}")]
    Dataset(String),
}

fn check_pair(x: &[f64], y: &[f64]) -> Result<(), StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::Length {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(StatsError::TooFew {
            needed: 2,
            found: x.len(),
        });
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(StatsError::NonFinite);
    }
    Ok(())
}

fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Sample standard deviation (n − 1 denominator).
fn sample_sd(x: &[f64]) -> f64 {
    let m = mean(x);
    (x.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (x.len() - 1) as f64).sqrt()
}

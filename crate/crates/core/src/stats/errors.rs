use std::f64::consts::PI;

use super::{mean, sample_sd, StatsError};
use crate::data::{BenchmarkRun, Dataset};
use crate::error::DataError;

/// Number of grid points of a density curve.
pub const KDE_POINTS: usize = 512;

/// Fallback bandwidth for samples with no spread.
const BW_FALLBACK: f64 = 1e-3;

/// Per-pair similarity errors `e_i = method_i − human_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorSample {
    pub errors: Vec<f64>,
    pub mean: f64,
    /// Index of the smallest `|e_i|` (first on ties).
    pub min_abs: usize,
    /// Index of the largest `|e_i|` (first on ties).
    pub max_abs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bandwidth {
    pub value: f64,
    /// True when the sample had no spread and [`BW_FALLBACK`] was used.
    pub fallback: bool,
}

/// Gaussian kernel density curve on an equispaced grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Kde {
    pub bandwidth: Bandwidth,
    pub x: Vec<f64>,
    pub density: Vec<f64>,
}

impl Kde {
    /// Trapezoid-rule integral of the curve.
    pub fn integral(&self) -> f64 {
        self.x
            .windows(2)
            .zip(self.density.windows(2))
            .map(|(x, d)| (x[1] - x[0]) * (d[0] + d[1]) / 2.0)
            .sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,density\n");
        for (x, d) in self.x.iter().zip(&self.density) {
            out.push_str(&format!("{x},{d}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorAnalysis {
    pub sample: ErrorSample,
    pub kde: Kde,
}

pub fn similarity_errors(method: &[f64], human: &[f64]) -> Result<ErrorSample, StatsError> {
    super::check_pair(method, human)?;
    let errors: Vec<f64> = method.iter().zip(human).map(|(m, h)| m - h).collect();
    let mut min_abs = 0;
    let mut max_abs = 0;
    for (i, e) in errors.iter().enumerate() {
        if e.abs() < errors[min_abs].abs() {
            min_abs = i;
        }
        if e.abs() > errors[max_abs].abs() {
            max_abs = i;
        }
    }
    Ok(ErrorSample {
        mean: mean(&errors),
        errors,
        min_abs,
        max_abs,
    })
}

/// Sample quantile with linear interpolation between order statistics (type 7).
/// `sorted` must be ascending and non-empty.
pub fn quantile7(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Rule-of-thumb bandwidth `0.9·min(sd, IQR/1.34)·n^(−1/5)`. When the IQR term is zero
/// the sd is used alone; when the sd is zero too the fixed fallback is flagged.
pub fn bw_nrd0(x: &[f64]) -> Result<Bandwidth, StatsError> {
    if x.len() < 2 {
        return Err(StatsError::TooFew {
            needed: 2,
            found: x.len(),
        });
    }
    let mut sorted = x.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted[0] == sorted[sorted.len() - 1] {
        return Ok(Bandwidth {
            value: BW_FALLBACK,
            fallback: true,
        });
    }
    let sd = sample_sd(x);
    let iqr = quantile7(&sorted, 0.75) - quantile7(&sorted, 0.25);
    let mut lo = sd.min(iqr / 1.34);
    if lo <= 0.0 {
        lo = sd;
    }
    Ok(Bandwidth {
        value: 0.9 * lo * (x.len() as f64).powf(-0.2),
        fallback: false,
    })
}

/// Gaussian KDE over `[min − 3bw, max + 3bw]` at [`KDE_POINTS`] points.
pub fn kde(x: &[f64]) -> Result<Kde, StatsError> {
    if x.iter().any(|v| !v.is_finite()) {
        return Err(StatsError::NonFinite);
    }
    let bandwidth = bw_nrd0(x)?;
    let bw = bandwidth.value;
    let min = x.iter().copied().fold(f64::INFINITY, f64::min);
    let max = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = (min - 3.0 * bw, max + 3.0 * bw);
    let step = (hi - lo) / (KDE_POINTS - 1) as f64;
    let norm = 1.0 / (x.len() as f64 * bw * (2.0 * PI).sqrt());
    let grid: Vec<f64> = (0..KDE_POINTS).map(|i| lo + step * i as f64).collect();
    let density = grid
        .iter()
        .map(|&g| {
            norm * x
                .iter()
                .map(|&v| {
                    let z = (g - v) / bw;
                    (-0.5 * z * z).exp()
                })
                .sum::<f64>()
        })
        .collect();
    Ok(Kde {
        bandwidth,
        x: grid,
        density,
    })
}

/// Errors of `run` against the human scores of `d`, plus their density curve.
pub fn error_analysis(run: &BenchmarkRun, d: &Dataset) -> Result<ErrorAnalysis, StatsError> {
    if run.scores.len() != d.len() {
        return Err(StatsError::Dataset(
            DataError::Misaligned {
                scores: run.scores.len(),
                pairs: d.len(),
            }
            .to_string(),
        ));
    }
    let sample = similarity_errors(&run.scores, &d.human_scores())?;
    let kde = kde(&sample.errors)?;
    Ok(ErrorAnalysis { sample, kde })
}

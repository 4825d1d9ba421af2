use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::hint::black_box;
use std::path::{Path, PathBuf};
use std::time::Instant;

use sts_core::measure::Scorer;
use sts_core::stats::{error_analysis, significance_matrix, uniform_split, ErrorAnalysis, SignificanceMatrix};
use sts_core::{BenchmarkRun, Dataset, PreprocessConfig, Preprocessor, ResourceLists};

use crate::exec::execute;
use crate::plan::LoadedPlan;
use crate::BenchError;

#[derive(Debug, Clone, PartialEq)]
pub struct Throughput {
    pub pairs_per_sec: f64,
    pub median_secs: f64,
    pub samples: Vec<f64>,
}

/// Median wall-clock rate over `repeats` sequential passes. Each pass builds the
/// preprocessor, preprocesses both sentences of every pair and scores it.
pub fn throughput(
    scorer: &Scorer,
    cfg: PreprocessConfig,
    secondary: Option<PreprocessConfig>,
    d: &Dataset,
    lists: &ResourceLists,
    repeats: usize,
) -> Result<Throughput, BenchError> {
    if repeats < 3 {
        return Err(BenchError::Invalid(format!(
            "throughput needs at least 3 repeats, got {repeats}"
        )));
    }
    let mut samples = Vec::with_capacity(repeats);
    for _ in 0..repeats {
        let start = Instant::now();
        let pre = Preprocessor::new(cfg, lists)?;
        let sec = secondary.map(|c| Preprocessor::new(c, lists)).transpose()?;
        for (i, p) in d.pairs().iter().enumerate() {
            let (a, b) = (pre.run(&p.s1), pre.run(&p.s2));
            let w = sec.as_ref().map(|s| (s.run(&p.s1), s.run(&p.s2)));
            let v = scorer
                .score_normalized(&a, &b, w.as_ref().map(|(x, y)| (x, y)))
                .map_err(|e| BenchError::Invalid(format!("pair {i}: {e}")))?;
            black_box(v);
        }
        samples.push(start.elapsed().as_secs_f64());
    }
    let mut sorted = samples.clone();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    let median_secs = if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    };
    Ok(Throughput {
        pairs_per_sec: d.len() as f64 / median_secs.max(f64::MIN_POSITIVE),
        median_secs,
        samples,
    })
}

pub struct SignificanceOutcome {
    pub splits: Vec<String>,
    /// Per-method harmonic scores, one per split, in split order.
    pub scores: Vec<(String, Vec<f64>)>,
    pub matrix: SignificanceMatrix,
}

impl SignificanceOutcome {
    pub fn scores_csv(&self) -> String {
        let mut out = String::from("split");
        for (m, _) in &self.scores {
            out.push(',');
            out.push_str(m);
        }
        out.push('\n');
        for (i, s) in self.splits.iter().enumerate() {
            out.push_str(s);
            for (_, hs) in &self.scores {
                let _ = write!(out, ",{}", hs[i]);
            }
            out.push('\n');
        }
        out
    }
}

/// Harmonic scores of every measure (first configuration) on each split, then the
/// pairwise one-sided p-value matrix. `splits` maps a dataset name to its part count.
pub fn significance_task(
    loaded: &LoadedPlan,
    splits: &BTreeMap<String, usize>,
) -> Result<SignificanceOutcome, BenchError> {
    for name in splits.keys() {
        if !loaded.datasets.iter().any(|d| &d.name == name) {
            return Err(BenchError::Invalid(format!("--split names unknown dataset `{name}`")));
        }
    }
    let mut parts = Vec::new();
    for d in &loaded.datasets {
        match splits.get(&d.name) {
            Some(&k) => parts.extend(uniform_split(d, k)?),
            None => parts.push(d.clone()),
        }
    }
    let mut view = loaded.clone();
    view.datasets = parts;
    for m in &mut view.plan.measures {
        m.configs.truncate(1);
    }
    let records = execute(&view)?;
    let mut scores: Vec<(String, Vec<f64>)> = view
        .plan
        .measures
        .iter()
        .map(|m| (m.id.to_string(), Vec::new()))
        .collect();
    for r in &records {
        let ok = r
            .outcome
            .as_ref()
            .map_err(|f| BenchError::Invalid(format!("{} on {} failed: {}", r.measure, r.dataset, f.message)))?;
        let slot = scores
            .iter_mut()
            .find(|(m, _)| *m == r.measure.to_string())
            .expect("planned measure");
        slot.1.push(ok.eval.h);
    }
    let matrix = significance_matrix(&scores)?;
    Ok(SignificanceOutcome {
        splits: view.datasets.iter().map(|d| d.name.clone()).collect(),
        scores,
        matrix,
    })
}

pub struct ErrorReport {
    pub analysis: ErrorAnalysis,
    pub errors_csv: PathBuf,
    pub kde_csv: PathBuf,
    pub extremes: PathBuf,
}

/// Writes per-pair errors, the density curve and the extreme pairs of one run.
pub fn error_analysis_task(run: &BenchmarkRun, d: &Dataset, out: &Path) -> Result<ErrorReport, BenchError> {
    let analysis = error_analysis(run, d)?;
    fs::create_dir_all(out).map_err(|e| BenchError::io(out, e))?;
    let stem = format!("{}__{}", d.name, run.measure_id).replace([':', '/', ' '], "_");

    let mut csv = String::from("pair_index,method,human,error\n");
    for (i, (p, e)) in d.pairs().iter().zip(&analysis.sample.errors).enumerate() {
        let _ = writeln!(csv, "{i},{},{},{e}", run.scores[i], p.human_score);
    }
    let errors_csv = out.join(format!("errors_{stem}.csv"));
    fs::write(&errors_csv, csv).map_err(|e| BenchError::io(&errors_csv, e))?;

    let kde_csv = out.join(format!("kde_{stem}.csv"));
    fs::write(&kde_csv, analysis.kde.to_csv()).map_err(|e| BenchError::io(&kde_csv, e))?;

    let mut txt = String::new();
    let s = &analysis.sample;
    let _ = writeln!(txt, "mean error {:.4}", s.mean);
    let bw = analysis.kde.bandwidth;
    let _ = writeln!(
        txt,
        "bandwidth {:.6}{}",
        bw.value,
        if bw.fallback {
            " (fallback: errors have no spread)"
        } else {
            ""
        }
    );
    for (label, i) in [("lowest |error|", s.min_abs), ("highest |error|", s.max_abs)] {
        let p = &d.pairs()[i];
        let _ = writeln!(
            txt,
            "\n{label}: pair {i}, method {:.3}, human {:.3}, error {:+.3}\n  s1: {}\n  s2: {}",
            run.scores[i],
            p.human_score,
            s.errors[i],
            p.s1.text(),
            p.s2.text()
        );
    }
    let extremes = out.join(format!("extremes_{stem}.txt"));
    fs::write(&extremes, txt).map_err(|e| BenchError::io(&extremes, e))?;
    Ok(ErrorReport {
        analysis,
        errors_csv,
        kde_csv,
        extremes,
    })
}

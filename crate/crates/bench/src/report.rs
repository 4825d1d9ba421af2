use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use sts_core::data::write_raw_scores;
use sts_core::stats::EvalScores;
use sts_core::{MeasureId, PreprocessConfig};

use crate::exec::{RunFailure, RunRecord};
use crate::plan::MeasureSpec;
use crate::BenchError;

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub dataset: String,
    pub measure: MeasureId,
    pub config: PreprocessConfig,
    /// `measure` alone when the measure runs a single configuration, else `measure@config`.
    pub method: String,
    pub scores: EvalScores,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FailedRow {
    pub dataset: String,
    pub method: String,
    pub failure: RunFailure,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub datasets: Vec<String>,
    pub measures: Vec<MeasureSpec>,
    pub rows: Vec<ReportRow>,
    pub failures: Vec<FailedRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BestConfig {
    pub config: PreprocessConfig,
    pub avg_h: f64,
    /// Another configuration reached the same average; the earlier one in grid order won.
    pub tie: bool,
}

fn method_label(spec: &MeasureSpec, cfg: &PreprocessConfig) -> String {
    if spec.configs.len() == 1 {
        spec.id.to_string()
    } else {
        format!("{}@{cfg}", spec.id)
    }
}

impl Report {
    pub fn new(datasets: Vec<String>, measures: Vec<MeasureSpec>, records: &[RunRecord]) -> Self {
        let mut rows = Vec::new();
        let mut failures = Vec::new();
        for r in records {
            let spec = measures
                .iter()
                .find(|m| m.id == r.measure)
                .expect("record of a planned measure");
            let method = method_label(spec, &r.config);
            match &r.outcome {
                Ok(ok) => rows.push(ReportRow {
                    dataset: r.dataset.clone(),
                    measure: r.measure,
                    config: r.config,
                    method,
                    scores: ok.eval,
                }),
                Err(f) => failures.push(FailedRow {
                    dataset: r.dataset.clone(),
                    method,
                    failure: f.clone(),
                }),
            }
        }
        Report {
            datasets,
            measures,
            rows,
            failures,
        }
    }

    /// Mean harmonic score of a configuration over all datasets, if every dataset has a row.
    pub fn average_h(&self, measure: MeasureId, cfg: &PreprocessConfig) -> Option<f64> {
        let hs: Vec<f64> = self
            .rows
            .iter()
            .filter(|r| r.measure == measure && r.config == *cfg)
            .map(|r| r.scores.h)
            .collect();
        (hs.len() == self.datasets.len() && !hs.is_empty()).then(|| hs.iter().sum::<f64>() / hs.len() as f64)
    }

    /// `method,r,rho,h` CSV for one dataset.
    pub fn dataset_csv(&self, dataset: &str) -> String {
        let mut out = String::from("method,r,rho,h\n");
        for r in self.rows.iter().filter(|r| r.dataset == dataset) {
            let _ = writeln!(out, "{},{},{},{}", r.method, r.scores.r, r.scores.rho, r.scores.h);
        }
        out
    }

    pub fn summary_csv(&self) -> String {
        let mut out = String::from("measure,config,avg_h,best\n");
        for spec in &self.measures {
            let best = best_config(self, spec.id).ok();
            for cfg in &spec.configs {
                let avg = self
                    .average_h(spec.id, cfg)
                    .map(|h| h.to_string())
                    .unwrap_or_else(|| "NA".into());
                let mark = match &best {
                    Some(b) if b.config == *cfg && b.tie => "best(tie)",
                    Some(b) if b.config == *cfg => "best",
                    _ => "",
                };
                let _ = writeln!(out, "{},{cfg},{avg},{mark}", spec.id);
            }
        }
        out
    }

    pub fn failures_csv(&self) -> String {
        let mut out = String::from("dataset,method,pair_index,message\n");
        for f in &self.failures {
            let idx = f.failure.pair_index.map(|i| i.to_string()).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{idx},\"{}\"",
                f.dataset,
                f.method,
                f.failure.message.replace('"', "'")
            );
        }
        out
    }

    /// Aligned plain-text tables for reading in a terminal.
    pub fn text_table(&self) -> String {
        let mut out = String::new();
        let width = self.rows.iter().map(|r| r.method.len()).max().unwrap_or(6).max(6);
        for d in &self.datasets {
            let _ = writeln!(out, "{d}");
            let _ = writeln!(out, "  {:<width$}  {:>7}  {:>7}  {:>7}", "method", "r", "rho", "h");
            for r in self.rows.iter().filter(|r| &r.dataset == d) {
                let best = best_config(self, r.measure).ok();
                let star =
                    if best.is_some_and(|b| b.config == r.config) && self.measure_spec(r.measure).configs.len() > 1 {
                        " *"
                    } else {
                        ""
                    };
                let _ = writeln!(
                    out,
                    "  {:<width$}  {:>7.3}  {:>7.3}  {:>7.3}{star}",
                    r.method, r.scores.r, r.scores.rho, r.scores.h
                );
            }
            for f in self.failures.iter().filter(|f| &f.dataset == d) {
                let _ = writeln!(out, "  {:<width$}  FAILED: {}", f.method, f.failure.message);
            }
            out.push('\n');
        }
        let _ = writeln!(out, "Best configuration per measure (mean h over datasets)");
        for spec in &self.measures {
            match best_config(self, spec.id) {
                Ok(b) => {
                    let _ = writeln!(
                        out,
                        "  {:<12} {:.3}  {}{}",
                        spec.id.to_string(),
                        b.avg_h,
                        b.config,
                        if b.tie { "  (tie, earliest in grid order)" } else { "" }
                    );
                }
                Err(e) => {
                    let _ = writeln!(out, "  {:<12} {e}", spec.id.to_string());
                }
            }
        }
        out
    }

    fn measure_spec(&self, id: MeasureId) -> &MeasureSpec {
        self.measures.iter().find(|m| m.id == id).expect("planned measure")
    }
}

/// Configuration with the highest mean harmonic score; ties go to the earliest in grid order.
pub fn best_config(report: &Report, measure: MeasureId) -> Result<BestConfig, BenchError> {
    let spec = report
        .measures
        .iter()
        .find(|m| m.id == measure)
        .ok_or_else(|| BenchError::Invalid(format!("measure `{measure}` is not in the report")))?;
    let mut best: Option<BestConfig> = None;
    for cfg in &spec.configs {
        let Some(h) = report.average_h(measure, cfg) else {
            continue;
        };
        match &mut best {
            Some(b) if h > b.avg_h => {
                *b = BestConfig {
                    config: *cfg,
                    avg_h: h,
                    tie: false,
                }
            }
            Some(b) if h == b.avg_h => b.tie = true,
            Some(_) => {}
            None => {
                best = Some(BestConfig {
                    config: *cfg,
                    avg_h: h,
                    tie: false,
                })
            }
        }
    }
    best.ok_or_else(|| BenchError::Invalid(format!("no complete configuration for `{measure}`")))
}

fn slug(s: &str) -> String {
    s.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '.' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// Raw CSV path for a run: `<out>/raw/<dataset>__<measure>__<config>.csv`.
pub fn raw_path(out: &Path, dataset: &str, measure: MeasureId, cfg: &PreprocessConfig) -> PathBuf {
    let cfg_slug = format!(
        "{}-{}-{}-{}-{}",
        cfg.ner,
        cfg.tokenizer,
        if cfg.lowercase { "lc" } else { "cased" },
        cfg.char_filter,
        cfg.stopwords
    );
    out.join("raw").join(format!(
        "{}__{}__{}.csv",
        slug(dataset),
        slug(&measure.to_string()),
        cfg_slug
    ))
}

fn write(path: &Path, text: &str) -> Result<(), BenchError> {
    fs::write(path, text).map_err(|e| BenchError::io(path, e))
}

/// Writes raw CSVs, per-dataset reports, the summary, failures and `report.txt`.
pub fn write_outputs(out: &Path, report: &Report, records: &[RunRecord]) -> Result<(), BenchError> {
    fs::create_dir_all(out.join("raw")).map_err(|e| BenchError::io(out, e))?;
    for r in records {
        if let Ok(ok) = &r.outcome {
            write_raw_scores(&ok.run, raw_path(out, &r.dataset, r.measure, &r.config))?;
        }
    }
    for d in &report.datasets {
        write(&out.join(format!("report_{}.csv", slug(d))), &report.dataset_csv(d))?;
    }
    write(&out.join("summary.csv"), &report.summary_csv())?;
    if !report.failures.is_empty() {
        write(&out.join("failures.csv"), &report.failures_csv())?;
    }
    write(&out.join("report.txt"), &report.text_table())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::RunOk;
    use sts_core::preprocess::StopWords;
    use sts_core::BenchmarkRun;

    fn record(d: &str, cfg: PreprocessConfig, h: f64) -> RunRecord {
        RunRecord {
            dataset: d.into(),
            measure: MeasureId::Block,
            config: cfg,
            outcome: Ok(RunOk {
                run: BenchmarkRun {
                    dataset_name: d.into(),
                    measure_id: MeasureId::Block,
                    preprocess_config: cfg,
                    scores: vec![0.5],
                },
                eval: EvalScores { r: h, rho: h, h },
            }),
        }
    }

    fn two_configs() -> (PreprocessConfig, PreprocessConfig) {
        let a = PreprocessConfig::default();
        let b = PreprocessConfig {
            stopwords: StopWords::None,
            ..a
        };
        (a, b)
    }

    #[test]
    fn best_is_argmax_of_mean_h() {
        let (a, b) = two_configs();
        let spec = MeasureSpec::new(MeasureId::Block, vec![a, b]);
        let recs = vec![
            record("x", a, 0.74),
            record("y", a, 0.74),
            record("x", b, 0.80),
            record("y", b, 0.76),
        ];
        let rep = Report::new(vec!["x".into(), "y".into()], vec![spec], &recs);
        let best = best_config(&rep, MeasureId::Block).unwrap();
        assert_eq!(best.config, b);
        assert!((best.avg_h - 0.78).abs() < 1e-12);
        assert!(!best.tie);
        assert!(rep.summary_csv().contains(",best\n"));
    }

    #[test]
    fn ties_go_to_grid_order_and_are_flagged() {
        let (a, b) = two_configs();
        let spec = MeasureSpec::new(MeasureId::Block, vec![b, a]);
        let recs = vec![record("x", a, 0.5), record("x", b, 0.5)];
        let rep = Report::new(vec!["x".into()], vec![spec], &recs);
        let best = best_config(&rep, MeasureId::Block).unwrap();
        assert_eq!(best.config, b);
        assert!(best.tie);
    }

    #[test]
    fn single_config_and_empty_report() {
        let (a, _) = two_configs();
        let spec = MeasureSpec::new(MeasureId::Block, vec![a]);
        let rep = Report::new(vec!["x".into()], vec![spec.clone()], &[record("x", a, 0.6)]);
        assert_eq!(best_config(&rep, MeasureId::Block).unwrap().config, a);
        assert_eq!(rep.dataset_csv("x"), "method,r,rho,h\nblock,0.6,0.6,0.6\n");
        let empty = Report::new(vec!["x".into()], vec![spec], &[]);
        assert!(best_config(&empty, MeasureId::Block).is_err());
    }
}

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use sts_core::measure::Scorer;
use sts_core::stats::{evaluate, EvalScores};
use sts_core::{BenchmarkRun, Dataset, MeasureId, PreprocessConfig, Preprocessor, ResourceLists, TokenSequence};

use crate::plan::LoadedPlan;
use crate::BenchError;

pub type TokenPairs = Vec<(TokenSequence, TokenSequence)>;

/// Preprocessed token pairs, computed once per (dataset, configuration).
#[derive(Debug, Default)]
pub struct PreprocessCache {
    entries: HashMap<(usize, PreprocessConfig), Arc<TokenPairs>>,
}

impl PreprocessCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Token pairs of dataset number `idx` under `cfg`.
    pub fn get(
        &mut self,
        idx: usize,
        d: &Dataset,
        cfg: PreprocessConfig,
        lists: &ResourceLists,
    ) -> Result<Arc<TokenPairs>, BenchError> {
        if let Some(t) = self.entries.get(&(idx, cfg)) {
            return Ok(t.clone());
        }
        let tokens = Arc::new(preprocess_dataset(d, cfg, lists)?);
        self.entries.insert((idx, cfg), tokens.clone());
        Ok(tokens)
    }
}

pub fn preprocess_dataset(d: &Dataset, cfg: PreprocessConfig, lists: &ResourceLists) -> Result<TokenPairs, BenchError> {
    let pre = Preprocessor::new(cfg, lists)?;
    Ok(d.pairs().par_iter().map(|p| (pre.run(&p.s1), pre.run(&p.s2))).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunFailure {
    /// First failing pair, when the failure came from scoring.
    pub pair_index: Option<usize>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOk {
    pub run: BenchmarkRun,
    pub eval: EvalScores,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub dataset: String,
    pub measure: MeasureId,
    pub config: PreprocessConfig,
    pub outcome: Result<RunOk, RunFailure>,
}

/// Scores every pair in parallel; scores keep pair order.
pub fn score_pairs(
    scorer: &Scorer,
    primary: &TokenPairs,
    secondary: Option<&TokenPairs>,
) -> Result<Vec<f64>, RunFailure> {
    let results: Vec<Result<f64, String>> = (0..primary.len())
        .into_par_iter()
        .map(|i| {
            let (a, b) = &primary[i];
            let sec = secondary.map(|s| (&s[i].0, &s[i].1));
            scorer.score_normalized(a, b, sec).map_err(|e| e.to_string())
        })
        .collect();
    results
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            r.map_err(|message| RunFailure {
                pair_index: Some(i),
                message,
            })
        })
        .collect()
}

/// Every (dataset, measure, configuration) run of the plan, in plan order.
/// Call inside a rayon pool to control parallelism.
pub fn execute(loaded: &LoadedPlan) -> Result<Vec<RunRecord>, BenchError> {
    let mut cache = PreprocessCache::new();
    let mut records = Vec::new();
    let scorers: Vec<Scorer> = loaded
        .plan
        .measures
        .iter()
        .map(|m| loaded.ctx.scorer(m.id).map_err(BenchError::Invalid))
        .collect::<Result<_, _>>()?;
    for (di, d) in loaded.datasets.iter().enumerate() {
        let human = d.human_scores();
        for (spec, scorer) in loaded.plan.measures.iter().zip(&scorers) {
            for &cfg in &spec.configs {
                let primary = cache.get(di, d, cfg, &loaded.ctx.lists)?;
                let secondary = match spec.secondary_for(&cfg) {
                    Some(c) => Some(cache.get(di, d, c, &loaded.ctx.lists)?),
                    None => None,
                };
                let outcome = score_pairs(scorer, &primary, secondary.as_deref()).and_then(|scores| {
                    let eval = evaluate(&scores, &human).map_err(|e| RunFailure {
                        pair_index: None,
                        message: e.to_string(),
                    })?;
                    Ok(RunOk {
                        run: BenchmarkRun {
                            dataset_name: d.name.clone(),
                            measure_id: spec.id,
                            preprocess_config: cfg,
                            scores,
                        },
                        eval,
                    })
                });
                if let Err(f) = &outcome {
                    log::error!(
                        "{} / {} / {cfg}: {}{}",
                        d.name,
                        spec.id,
                        f.message,
                        f.pair_index.map(|i| format!(" (pair {i})")).unwrap_or_default()
                    );
                }
                records.push(RunRecord {
                    dataset: d.name.clone(),
                    measure: spec.id,
                    config: cfg,
                    outcome,
                });
            }
        }
    }
    log::info!("{} runs, {} preprocessed views", records.len(), cache.len());
    Ok(records)
}

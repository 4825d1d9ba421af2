//! Benchmark plans and their on-disk format.
//!
//! A plan file holds one `key = value` entry per line; `#` starts a comment.
//!
//! ```text
//! out = results
//! threads = 4
//! resources = lists/            # overrides for charfilters/ and stopwords/
//! taxonomy = onto/taxonomy.tsv
//! lexicon = onto/lexicon.tsv
//! vectors = vectors/bioword.txt
//! dataset.BIOSSES = data/BIOSSES.tsv
//! annotations.BIOSSES = data/BIOSSES.ann
//! measure = liblock
//! measure = block
//! config.liblock = ner=annotations;stopwords=none
//! grid.block = full
//! wbsm-config.com = ner=none;stopwords=nltk2018
//! ```
//!
//! Relative paths resolve against the plan file's directory. A measure without
//! `config.` or `grid.` runs the default configuration.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use sts_core::data::{load_annotations, load_dataset};
use sts_core::ontosim::{Lexicon, Taxonomy};
use sts_core::preprocess::{config_grid, GridDimensions, NerMode};
use sts_core::vecsim::load_vectors;
use sts_core::{Dataset, MeasureContext, MeasureId, PreprocessConfig, ResourceLists};

use crate::BenchError;

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSpec {
    pub name: String,
    pub path: PathBuf,
    pub annotations: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureSpec {
    pub id: MeasureId,
    /// Configurations in grid order.
    pub configs: Vec<PreprocessConfig>,
    /// Word-level configuration for the WBSM half of COM.
    pub wbsm_config: Option<PreprocessConfig>,
}

impl MeasureSpec {
    pub fn new(id: MeasureId, configs: Vec<PreprocessConfig>) -> Self {
        MeasureSpec {
            id,
            configs,
            wbsm_config: None,
        }
    }

    /// The secondary preprocessing used alongside `primary`, if the measure has one.
    pub fn secondary_for(&self, primary: &PreprocessConfig) -> Option<PreprocessConfig> {
        self.id
            .secondary_config(primary)
            .map(|default| self.wbsm_config.unwrap_or(default))
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchmarkPlan {
    pub datasets: Vec<DatasetSpec>,
    pub measures: Vec<MeasureSpec>,
    pub out: PathBuf,
    pub threads: Option<usize>,
    pub resources: Option<PathBuf>,
    pub taxonomy: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub vectors: Option<PathBuf>,
}

fn err(line: usize, msg: impl Into<String>) -> BenchError {
    BenchError::Plan {
        line,
        message: msg.into(),
    }
}

impl BenchmarkPlan {
    pub fn load(path: &Path) -> Result<Self, BenchError> {
        let text = fs::read_to_string(path).map_err(|e| BenchError::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base)
    }

    pub fn parse(text: &str, base: &Path) -> Result<Self, BenchError> {
        let resolve = |v: &str| {
            let p = PathBuf::from(v);
            if p.is_absolute() {
                p
            } else {
                base.join(p)
            }
        };
        let mut plan = BenchmarkPlan {
            out: base.join("results"),
            ..Default::default()
        };
        let mut datasets: Vec<(String, PathBuf)> = Vec::new();
        let mut annotations: BTreeMap<String, (usize, PathBuf)> = BTreeMap::new();
        let mut measures: Vec<MeasureId> = Vec::new();
        let mut configs: BTreeMap<String, (usize, Vec<PreprocessConfig>)> = BTreeMap::new();
        let mut wbsm: BTreeMap<String, (usize, PreprocessConfig)> = BTreeMap::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| err(line, format!("expected `key = value`, found `{content}`")))?;
            if value.is_empty() {
                return Err(err(line, format!("`{key}` has no value")));
            }
            match key.split_once('.') {
                Some(("dataset", name)) => {
                    if datasets.iter().any(|(n, _)| n == name) {
                        return Err(err(line, format!("dataset `{name}` declared twice")));
                    }
                    datasets.push((name.to_string(), resolve(value)));
                }
                Some(("annotations", name)) => {
                    annotations.insert(name.to_string(), (line, resolve(value)));
                }
                Some(("config", m)) => {
                    let cfg: PreprocessConfig = value.parse().map_err(|e: String| err(line, e))?;
                    configs.insert(m.to_string(), (line, vec![cfg]));
                }
                Some(("grid", m)) => {
                    let dims: GridDimensions = value.parse().map_err(|e: String| err(line, e))?;
                    let grid = config_grid(&dims).map_err(|e| err(line, e.to_string()))?;
                    configs.insert(m.to_string(), (line, grid));
                }
                Some(("wbsm-config", m)) => {
                    let cfg: PreprocessConfig = value.parse().map_err(|e: String| err(line, e))?;
                    wbsm.insert(m.to_string(), (line, cfg));
                }
                Some((other, _)) => return Err(err(line, format!("unknown key prefix `{other}`"))),
                None => match key {
                    "measure" => {
                        let id: MeasureId = value.parse().map_err(|e: String| err(line, e))?;
                        if measures.contains(&id) {
                            return Err(err(line, format!("measure `{id}` listed twice")));
                        }
                        measures.push(id);
                    }
                    "out" => plan.out = resolve(value),
                    "threads" => {
                        let n: usize = value
                            .parse()
                            .map_err(|_| err(line, format!("bad thread count `{value}`")))?;
                        plan.threads = Some(n.max(1));
                    }
                    "resources" => plan.resources = Some(resolve(value)),
                    "taxonomy" => plan.taxonomy = Some(resolve(value)),
                    "lexicon" => plan.lexicon = Some(resolve(value)),
                    "vectors" => plan.vectors = Some(resolve(value)),
                    other => return Err(err(line, format!("unknown key `{other}`"))),
                },
            }
        }

        for (name, (line, _)) in &annotations {
            if !datasets.iter().any(|(n, _)| n == name) {
                return Err(err(*line, format!("annotations for undeclared dataset `{name}`")));
            }
        }
        let declared: BTreeSet<String> = measures.iter().map(MeasureId::name).collect();
        let keyed = configs
            .iter()
            .map(|(k, v)| (k, v.0))
            .chain(wbsm.iter().map(|(k, v)| (k, v.0)));
        for (m, line) in keyed {
            let canon = m.parse::<MeasureId>().map(|id| id.name()).unwrap_or_else(|_| m.clone());
            if !declared.contains(&canon) {
                return Err(err(line, format!("configuration for undeclared measure `{m}`")));
            }
        }
        let lookup = |id: &MeasureId| -> Option<&str> {
            configs
                .keys()
                .find(|k| k.parse::<MeasureId>().ok().as_ref() == Some(id))
                .map(String::as_str)
        };
        plan.datasets = datasets
            .into_iter()
            .map(|(name, path)| DatasetSpec {
                annotations: annotations.get(&name).map(|(_, p)| p.clone()),
                name,
                path,
            })
            .collect();
        plan.measures = measures
            .iter()
            .map(|id| MeasureSpec {
                id: *id,
                configs: lookup(id)
                    .map(|k| configs[k].1.clone())
                    .unwrap_or_else(|| vec![PreprocessConfig::default()]),
                wbsm_config: wbsm
                    .iter()
                    .find(|(k, _)| k.parse::<MeasureId>().ok().as_ref() == Some(id))
                    .map(|(_, (_, c))| *c),
            })
            .collect();
        Ok(plan)
    }

    /// Checks the plan and loads every resource it names.
    pub fn validate(&self) -> Result<LoadedPlan, BenchError> {
        if self.datasets.is_empty() {
            return Err(BenchError::Invalid("plan names no dataset".into()));
        }
        if self.measures.is_empty() {
            return Err(BenchError::Invalid("plan names no measure".into()));
        }
        let mut seen = BTreeSet::new();
        for m in &self.measures {
            if !seen.insert(m.id) {
                return Err(BenchError::Invalid(format!("measure `{}` listed twice", m.id)));
            }
            if m.configs.is_empty() {
                return Err(BenchError::Invalid(format!("measure `{}` has no configuration", m.id)));
            }
        }

        let lists = match &self.resources {
            Some(dir) => ResourceLists::with_overrides(dir)?,
            None => ResourceLists::builtin(),
        };
        let mut ctx = MeasureContext::new(lists);
        match (&self.taxonomy, &self.lexicon) {
            (Some(t), Some(l)) => {
                let tax = Taxonomy::load(t)?;
                let lex = Lexicon::load(l, &tax)?;
                ctx = ctx.with_ontology(Arc::new(tax), Arc::new(lex));
            }
            (None, None) => {}
            _ => {
                return Err(BenchError::Invalid(
                    "taxonomy and lexicon must be given together".into(),
                ))
            }
        }
        if let Some(v) = &self.vectors {
            ctx = ctx.with_vectors(Arc::new(load_vectors(v, None)?));
        }
        for m in &self.measures {
            ctx.scorer(m.id).map_err(BenchError::Invalid)?;
            for cfg in m.configs.iter().chain(m.wbsm_config.iter()) {
                sts_core::Preprocessor::new(*cfg, &ctx.lists)?;
            }
        }

        let mut datasets = Vec::with_capacity(self.datasets.len());
        for spec in &self.datasets {
            let mut d = load_dataset(&spec.path)?;
            d.name = spec.name.clone();
            if let Some(a) = &spec.annotations {
                d.attach_annotations(&load_annotations(a)?)?;
            }
            datasets.push(d);
        }
        let needs_ner = self
            .measures
            .iter()
            .flat_map(|m| &m.configs)
            .any(|c| c.ner == NerMode::Annotations);
        if needs_ner && self.datasets.iter().any(|d| d.annotations.is_none()) {
            log::warn!("NER configurations run without annotations on some datasets; they reduce to plain text");
        }
        Ok(LoadedPlan {
            plan: self.clone(),
            datasets,
            ctx,
        })
    }
}

/// A validated plan with datasets and models in memory.
#[derive(Debug, Clone)]
pub struct LoadedPlan {
    pub plan: BenchmarkPlan,
    pub datasets: Vec<Dataset>,
    pub ctx: MeasureContext,
}

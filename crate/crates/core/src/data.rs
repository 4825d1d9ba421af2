//! Dataset, annotation and raw-score types plus their on-disk formats.
//!
//! * Dataset TSV: `sentence1<TAB>sentence2<TAB>score`, UTF-8, one pair per line.
//!   A header line is detected by a non-numeric third field. Extra columns are ignored.
//! * Annotation sidecar: `row<TAB>sentence<TAB>start<TAB>end<TAB>code`, where `sentence`
//!   is `1`/`2` (or `s1`/`s2`) and `start..end` is a half-open span of character offsets.
//! * Raw scores CSV: optional `# key=value` metadata lines, then `pair_index,score`.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::DataError;
use crate::measure::MeasureId;
use crate::preprocess::PreprocessConfig;

/// Which sentence of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    S1,
    S2,
}

impl FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "s1" => Ok(Side::S1),
            "2" | "s2" => Ok(Side::S2),
            other => Err(format!("unknown sentence selector `{other}` (expected 1 or 2)")),
        }
    }
}

/// Identifies one sentence of a dataset: its row and its side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SentenceId {
    pub row: usize,
    pub side: Side,
}

impl fmt::Display for SentenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::S1 => "s1",
            Side::S2 => "s2",
        };
        write!(f, "row {} {}", self.row, side)
    }
}

/// A concept-code annotation over a half-open character span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    pub start: usize,
    pub end: usize,
    pub code: String,
}

impl Annotation {
    pub fn new(start: usize, end: usize, code: impl Into<String>) -> Self {
        Annotation {
            start,
            end,
            code: code.into(),
        }
    }
}

/// Checks that spans are well formed and pairwise disjoint; returns them sorted.
fn check_spans(
    id: &str,
    mut annotations: Vec<Annotation>,
    text_len: Option<usize>,
) -> Result<Vec<Annotation>, DataError> {
    let bad = |message: String| DataError::Annotation {
        id: id.to_string(),
        message,
    };
    for a in &annotations {
        if a.start >= a.end {
            return Err(bad(format!("span ({},{}) is empty or reversed", a.start, a.end)));
        }
        if a.code.trim().is_empty() {
            return Err(bad(format!("span ({},{}) has an empty concept code", a.start, a.end)));
        }
        if let Some(len) = text_len {
            if a.end > len {
                return Err(bad(format!(
                    "span ({},{}) exceeds sentence length {len}",
                    a.start, a.end
                )));
            }
        }
    }
    annotations.sort_by_key(|a| (a.start, a.end));
    for w in annotations.windows(2) {
        if w[1].start < w[0].end {
            return Err(bad(format!(
                "spans ({},{}) and ({},{}) overlap",
                w[0].start, w[0].end, w[1].start, w[1].end
            )));
        }
    }
    Ok(annotations)
}

/// A sentence as read from a dataset, possibly carrying NER annotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawSentence {
    text: String,
    annotations: Vec<Annotation>,
}

impl RawSentence {
    pub fn new(text: impl Into<String>) -> Self {
        RawSentence {
            text: text.into(),
            annotations: Vec::new(),
        }
    }

    /// Builds an annotated sentence, rejecting out-of-bounds or overlapping spans.
    pub fn with_annotations(text: impl Into<String>, annotations: Vec<Annotation>) -> Result<Self, DataError> {
        let text = text.into();
        let len = text.chars().count();
        let annotations = check_spans(&format!("{text:?}"), annotations, Some(len))?;
        Ok(RawSentence { text, annotations })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// Annotations sorted by start offset.
    pub fn annotations(&self) -> &[Annotation] {
        &self.annotations
    }
}

/// Ordered tokens of one pre-processed sentence. No token is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TokenSequence(Vec<String>);

impl TokenSequence {
    pub fn new(tokens: Vec<String>) -> Result<Self, DataError> {
        if let Some(i) = tokens.iter().position(|t| t.is_empty()) {
            return Err(DataError::Token(format!("token {i} is empty")));
        }
        Ok(TokenSequence(tokens))
    }

    /// Splits on whitespace. Handy for tests and already pre-processed text.
    pub fn from_words(text: &str) -> Self {
        TokenSequence(text.split_whitespace().map(str::to_string).collect())
    }

    pub fn tokens(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    pub fn join(&self, sep: &str) -> String {
        self.0.join(sep)
    }

    pub fn into_inner(self) -> Vec<String> {
        self.0
    }
}

impl<S: Into<String>> FromIterator<S> for TokenSequence {
    /// Collects tokens, silently dropping empty strings.
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        TokenSequence(
            iter.into_iter()
                .map(Into::into)
                .filter(|t: &String| !t.is_empty())
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SentencePair {
    pub s1: RawSentence,
    pub s2: RawSentence,
    /// Human similarity judgement, normalized to `[0,1]`.
    pub human_score: f64,
}

/// Annotation sidecar contents keyed by sentence.
pub type AnnotationMap = BTreeMap<SentenceId, Vec<Annotation>>;

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    pairs: Vec<SentencePair>,
    /// Original `(min, max)` of the score column when it was min-max normalized.
    pub normalized_from: Option<(f64, f64)>,
}

impl Dataset {
    pub fn new(name: impl Into<String>, pairs: Vec<SentencePair>) -> Result<Self, DataError> {
        let name = name.into();
        if pairs.is_empty() {
            return Err(DataError::Empty(name.into()));
        }
        Ok(Dataset {
            name,
            pairs,
            normalized_from: None,
        })
    }

    pub fn pairs(&self) -> &[SentencePair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn human_scores(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.human_score).collect()
    }

    /// Attaches sidecar annotations. Unknown rows, out-of-bounds and overlapping
    /// spans are rejected and the dataset is left untouched on error.
    pub fn attach_annotations(&mut self, annotations: &AnnotationMap) -> Result<(), DataError> {
        let mut updated = self.pairs.clone();
        for (id, anns) in annotations {
            let pair = updated.get_mut(id.row).ok_or_else(|| DataError::Annotation {
                id: id.to_string(),
                message: format!("dataset `{}` has only {} rows", self.name, self.len()),
            })?;
            let sentence = match id.side {
                Side::S1 => &mut pair.s1,
                Side::S2 => &mut pair.s2,
            };
            let len = sentence.text.chars().count();
            sentence.annotations = check_spans(&id.to_string(), anns.clone(), Some(len))?;
        }
        self.pairs = updated;
        Ok(())
    }

    /// Contiguous sub-dataset `[start, end)` keeping its order.
    pub fn slice(&self, name: impl Into<String>, start: usize, end: usize) -> Result<Self, DataError> {
        Dataset::new(name, self.pairs[start..end].to_vec())
    }
}

fn read_to_string(path: &Path) -> Result<String, DataError> {
    fs::read_to_string(path).map_err(|e| DataError::io(path, e))
}

/// Loads a dataset TSV; the dataset name is the file stem.
pub fn load_dataset(path: impl AsRef<Path>) -> Result<Dataset, DataError> {
    let path = path.as_ref();
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dataset".to_string());
    parse_dataset(&name, &read_to_string(path)?, path)
}

/// Parses dataset TSV text. `origin` only labels error messages.
pub fn parse_dataset(name: &str, text: &str, origin: &Path) -> Result<Dataset, DataError> {
    let mut rows = Vec::new();
    let mut warned_extra = false;
    for (idx, raw_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() < 3 {
            return Err(DataError::parse(
                origin,
                lineno,
                format!("expected 3 tab-separated fields, found {}", fields.len()),
            ));
        }
        let score = match fields[2].trim().parse::<f64>() {
            Ok(v) if v.is_finite() => v,
            Ok(_) => return Err(DataError::parse(origin, lineno, "score is not finite")),
            Err(_) if rows.is_empty() && idx == first_content_line(text) => continue,
            Err(_) => {
                return Err(DataError::parse(
                    origin,
                    lineno,
                    format!("score `{}` is not a number", fields[2]),
                ))
            }
        };
        if fields.len() > 3 && !warned_extra {
            log::warn!(
                "{}:{lineno}: ignoring {} extra column(s)",
                origin.display(),
                fields.len() - 3
            );
            warned_extra = true;
        }
        rows.push((fields[0].to_string(), fields[1].to_string(), score));
    }
    if rows.is_empty() {
        return Err(DataError::Empty(origin.to_path_buf()));
    }

    let (min, max) = rows.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
        (lo.min(r.2), hi.max(r.2))
    });
    let mut normalized_from = None;
    if max > 1.0 || min < 0.0 {
        if max == min {
            return Err(DataError::parse(
                origin,
                1,
                format!("constant score column {max} lies outside [0,1] and cannot be normalized"),
            ));
        }
        log::info!(
            "{}: scores span [{min}, {max}]; min-max normalizing to [0,1]",
            origin.display()
        );
        for r in &mut rows {
            r.2 = (r.2 - min) / (max - min);
        }
        normalized_from = Some((min, max));
    }

    let pairs = rows
        .into_iter()
        .map(|(s1, s2, human_score)| SentencePair {
            s1: RawSentence::new(s1),
            s2: RawSentence::new(s2),
            human_score,
        })
        .collect();
    let mut ds = Dataset::new(name, pairs)?;
    ds.normalized_from = normalized_from;
    Ok(ds)
}

fn first_content_line(text: &str) -> usize {
    text.lines().position(|l| !l.trim().is_empty()).unwrap_or(0)
}

/// Writes the canonical three-column TSV (no header).
pub fn write_dataset(ds: &Dataset, path: impl AsRef<Path>) -> Result<(), DataError> {
    let path = path.as_ref();
    let mut out = String::new();
    for p in ds.pairs() {
        out.push_str(p.s1.text());
        out.push('\t');
        out.push_str(p.s2.text());
        out.push('\t');
        out.push_str(&p.human_score.to_string());
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| DataError::io(path, e))
}

pub fn load_annotations(path: impl AsRef<Path>) -> Result<AnnotationMap, DataError> {
    let path = path.as_ref();
    parse_annotations(&read_to_string(path)?, path)
}

pub fn parse_annotations(text: &str, origin: &Path) -> Result<AnnotationMap, DataError> {
    let mut map = AnnotationMap::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 5 {
            return Err(DataError::parse(
                origin,
                lineno,
                format!("expected 5 tab-separated fields, found {}", f.len()),
            ));
        }
        let num = |s: &str, what: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| DataError::parse(origin, lineno, format!("bad {what} `{s}`")))
        };
        let row = num(f[0], "row index")?;
        let side = f[1].parse::<Side>().map_err(|m| DataError::parse(origin, lineno, m))?;
        let start = num(f[2], "span start")?;
        let end = num(f[3], "span end")?;
        let code = f[4].trim();
        if start >= end {
            return Err(DataError::parse(
                origin,
                lineno,
                format!("span ({start},{end}) is empty or reversed"),
            ));
        }
        if code.is_empty() {
            return Err(DataError::parse(origin, lineno, "empty concept code"));
        }
        map.entry(SentenceId { row, side })
            .or_default()
            .push(Annotation::new(start, end, code));
    }
    for (id, anns) in map.iter_mut() {
        *anns = check_spans(&id.to_string(), std::mem::take(anns), None)?;
    }
    Ok(map)
}

/// Raw per-pair scores of one (dataset, measure, configuration) evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRun {
    pub dataset_name: String,
    pub measure_id: MeasureId,
    pub preprocess_config: PreprocessConfig,
    pub scores: Vec<f64>,
}

/// Writes a raw-score CSV. Scores use the shortest decimal that parses back to the
/// same `f64`, so a write/read cycle is bit-exact.
pub fn write_raw_scores(run: &BenchmarkRun, path: impl AsRef<Path>) -> Result<(), DataError> {
    let path = path.as_ref();
    if run.scores.is_empty() {
        return Err(DataError::EmptyRun);
    }
    let mut out = String::with_capacity(run.scores.len() * 24 + 128);
    out.push_str(&format!("# dataset={}\n", run.dataset_name));
    out.push_str(&format!("# measure={}\n", run.measure_id));
    out.push_str(&format!("# config={}\n", run.preprocess_config));
    out.push_str("pair_index,score\n");
    for (i, s) in run.scores.iter().enumerate() {
        out.push_str(&format!("{i},{s}\n"));
    }
    fs::write(path, out).map_err(|e| DataError::io(path, e))
}

pub fn read_raw_scores(path: impl AsRef<Path>) -> Result<BenchmarkRun, DataError> {
    let path = path.as_ref();
    let text = read_to_string(path)?;
    let mut meta: BTreeMap<String, String> = BTreeMap::new();
    let mut scores = Vec::new();
    let mut seen_header = false;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.trim().split_once('=') {
                meta.insert(k.trim().to_string(), v.trim().to_string());
            }
            continue;
        }
        if !seen_header {
            if line.trim() != "pair_index,score" {
                return Err(DataError::parse(path, lineno, "expected header `pair_index,score`"));
            }
            seen_header = true;
            continue;
        }
        let (i, s) = line
            .split_once(',')
            .ok_or_else(|| DataError::parse(path, lineno, "expected `pair_index,score`"))?;
        let i: usize = i
            .trim()
            .parse()
            .map_err(|_| DataError::parse(path, lineno, format!("bad pair index `{i}`")))?;
        if i != scores.len() {
            return Err(DataError::parse(
                path,
                lineno,
                format!("pair index {i} out of sequence (expected {})", scores.len()),
            ));
        }
        let s: f64 = s
            .trim()
            .parse()
            .map_err(|_| DataError::parse(path, lineno, format!("bad score `{s}`")))?;
        scores.push(s);
    }
    if scores.is_empty() {
        return Err(DataError::Empty(path.to_path_buf()));
    }
    let get = |k: &str| meta.get(k).cloned();
    let measure_id = match get("measure") {
        Some(m) => m.parse().map_err(|e: String| DataError::parse(path, 0, e))?,
        None => return Err(DataError::parse(path, 0, "missing `# measure=` metadata")),
    };
    let preprocess_config = match get("config") {
        Some(c) => c.parse().map_err(|e: String| DataError::parse(path, 0, e))?,
        None => PreprocessConfig::default(),
    };
    Ok(BenchmarkRun {
        dataset_name: get("dataset").unwrap_or_default(),
        measure_id,
        preprocess_config,
        scores,
    })
}

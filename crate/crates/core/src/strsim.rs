//! String-based sentence similarity measures.
//!
//! All measures operate on pre-processed token sequences and return a value in `[0,1]`.
//! Set-based measures take a [`WordSet`] (the distinct tokens of a sentence); frequency-based
//! ones take the sequence itself. Measures over empty operands that would be undefined
//! return [`SimError::EmptyInput`] instead of a sentinel.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::data::TokenSequence;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("{measure}: undefined for empty input")]
    EmptyInput { measure: &'static str },
    #[error("{0}")]
    Invalid(String),
}

fn empty(measure: &'static str) -> SimError {
    SimError::EmptyInput { measure }
}

/// Token frequencies of one sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenProfile<'a> {
    counts: HashMap<&'a str, usize>,
    mass: usize,
}

impl<'a> TokenProfile<'a> {
    pub fn new(seq: &'a TokenSequence) -> Self {
        let mut counts = HashMap::with_capacity(seq.len());
        for t in seq.iter() {
            *counts.entry(t).or_insert(0) += 1;
        }
        TokenProfile {
            counts,
            mass: seq.len(),
        }
    }

    pub fn count(&self, token: &str) -> usize {
        self.counts.get(token).copied().unwrap_or(0)
    }

    /// Sum of all counts, i.e. the sequence length.
    pub fn mass(&self) -> usize {
        self.mass
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'a str, usize)> + '_ {
        self.counts.iter().map(|(k, v)| (*k, *v))
    }
}

/// The distinct tokens of a sentence.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordSet<'a> {
    words: BTreeSet<&'a str>,
}

impl<'a> WordSet<'a> {
    pub fn new(seq: &'a TokenSequence) -> Self {
        WordSet {
            words: seq.iter().collect(),
        }
    }

    pub fn from_words<I: IntoIterator<Item = &'a str>>(words: I) -> Self {
        WordSet {
            words: words.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &str) -> bool {
        self.words.contains(w)
    }

    /// Words in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = &'a str> + '_ {
        self.words.iter().copied()
    }

    pub fn intersection_len(&self, other: &WordSet<'_>) -> usize {
        let (small, large) = if self.len() <= other.len() {
            (&self.words, &other.words)
        } else {
            (&other.words, &self.words)
        };
        small.iter().filter(|w| large.contains(*w)).count()
    }

    /// The joint dictionary `self ∪ other`, sorted.
    pub fn union<'b>(&'b self, other: &'b WordSet<'a>) -> Vec<&'a str> {
        self.words.union(&other.words).copied().collect()
    }
}

/// Similarity from the L1 (city block) distance between token frequency profiles:
/// `1 − Σ|fr(w,s1) − fr(w,s2)| / (|s1| + |s2|)` over the joint dictionary.
pub fn block_distance_sim(s1: &TokenSequence, s2: &TokenSequence) -> Result<f64, SimError> {
    if s1.is_empty() && s2.is_empty() {
        return Err(empty("block"));
    }
    let p1 = TokenProfile::new(s1);
    let p2 = TokenProfile::new(s2);
    let mut l1 = 0usize;
    for (w, c1) in p1.iter() {
        l1 += c1.abs_diff(p2.count(w));
    }
    for (w, c2) in p2.iter() {
        if p1.count(w) == 0 {
            l1 += c2;
        }
    }
    let total = p1.mass() + p2.mass();
    Ok(1.0 - l1 as f64 / total as f64)
}

/// Cosine of two binary indicator vectors, written as `dot / sqrt(|a|·|b|)` so that it
/// agrees bit for bit with the explicit vector computation.
pub(crate) fn cosine_from_parts(dot: f64, norm_sq1: f64, norm_sq2: f64) -> f64 {
    dot / (norm_sq1 * norm_sq2).sqrt()
}

/// Binary-vector cosine over the joint dictionary: `|S1∩S2| / sqrt(|S1|·|S2|)`.
pub fn li_adapted_sim(set1: &WordSet<'_>, set2: &WordSet<'_>) -> Result<f64, SimError> {
    if set1.is_empty() || set2.is_empty() {
        return Err(empty("li-adapted"));
    }
    let shared = set1.intersection_len(set2) as f64;
    Ok(cosine_from_parts(shared, set1.len() as f64, set2.len() as f64))
}

/// Component scores of one LiBlock evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiBlockParts {
    pub li_adapted: f64,
    pub block: f64,
    pub liblock: f64,
}

/// LiBlock with its two components.
pub fn liblock_parts(s1: &TokenSequence, s2: &TokenSequence) -> Result<LiBlockParts, SimError> {
    let li_adapted = li_adapted_sim(&WordSet::new(s1), &WordSet::new(s2))?;
    let block = block_distance_sim(s1, s2)?;
    let liblock = if li_adapted == 0.0 {
        block
    } else {
        0.5 * block + 0.5 * li_adapted
    };
    Ok(LiBlockParts {
        li_adapted,
        block,
        liblock,
    })
}

/// LiBlock: the mean of the block-distance and Li-adapted similarities, or the block
/// distance alone when the sentences share no word.
pub fn liblock_sim(s1: &TokenSequence, s2: &TokenSequence) -> Result<f64, SimError> {
    liblock_parts(s1, s2).map(|p| p.liblock)
}

/// `|S1∩S2| / |S1∪S2|`.
pub fn jaccard_sim(set1: &WordSet<'_>, set2: &WordSet<'_>) -> Result<f64, SimError> {
    if set1.is_empty() && set2.is_empty() {
        return Err(empty("jaccard"));
    }
    let inter = set1.intersection_len(set2);
    let union = set1.len() + set2.len() - inter;
    Ok(inter as f64 / union as f64)
}

/// `|S1∩S2| / min(|S1|,|S2|)`.
pub fn overlap_sim(set1: &WordSet<'_>, set2: &WordSet<'_>) -> Result<f64, SimError> {
    if set1.is_empty() || set2.is_empty() {
        return Err(empty("overlap"));
    }
    let inter = set1.intersection_len(set2);
    Ok(inter as f64 / set1.len().min(set2.len()) as f64)
}

/// Unit of q-gram shingles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QgramUnit {
    /// Runs of `q` consecutive tokens.
    #[default]
    Tokens,
    /// Runs of `q` consecutive characters of the space-joined sentence.
    Chars,
}

fn shingles<T: Clone + Eq + std::hash::Hash>(items: &[T], q: usize) -> HashMap<Vec<T>, usize> {
    let mut out = HashMap::new();
    if items.is_empty() {
        return out;
    }
    if items.len() < q {
        out.insert(items.to_vec(), 1);
        return out;
    }
    for w in items.windows(q) {
        *out.entry(w.to_vec()).or_insert(0) += 1;
    }
    out
}

fn dice<K: Eq + std::hash::Hash>(a: &HashMap<K, usize>, b: &HashMap<K, usize>) -> Option<f64> {
    let na: usize = a.values().sum();
    let nb: usize = b.values().sum();
    if na + nb == 0 {
        return None;
    }
    let inter: usize = a.iter().map(|(k, ca)| (*ca).min(b.get(k).copied().unwrap_or(0))).sum();
    Some(2.0 * inter as f64 / (na + nb) as f64)
}

/// Dice coefficient over multisets of q-shingles. A sequence shorter than `q`
/// contributes a single shingle of its full length.
pub fn qgram_sim(s1: &TokenSequence, s2: &TokenSequence, q: usize, unit: QgramUnit) -> Result<f64, SimError> {
    if q == 0 {
        return Err(SimError::Invalid("qgram: q must be at least 1".into()));
    }
    let score = match unit {
        QgramUnit::Tokens => {
            let a: Vec<&str> = s1.iter().collect();
            let b: Vec<&str> = s2.iter().collect();
            dice(&shingles(&a, q), &shingles(&b, q))
        }
        QgramUnit::Chars => {
            let a: Vec<char> = s1.join(" ").chars().collect();
            let b: Vec<char> = s2.join(" ").chars().collect();
            dice(&shingles(&a, q), &shingles(&b, q))
        }
    };
    score.ok_or_else(|| empty("qgram"))
}

/// Character-level edit distance with unit insert, delete and substitute costs.
pub fn levenshtein_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() {
        return b.len();
    }
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, ca) in a.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let sub = diag + usize::from(ca != cb);
            diag = row[j + 1];
            row[j + 1] = sub.min(row[j] + 1).min(diag + 1);
        }
    }
    row[b.len()]
}

/// `1 − lev(a,b) / max(|a|,|b|)` over the space-joined sentences; 1 when both are empty.
pub fn levenshtein_str_sim(a: &str, b: &str) -> f64 {
    let longest = a.chars().count().max(b.chars().count());
    if longest == 0 {
        return 1.0;
    }
    1.0 - levenshtein_distance(a, b) as f64 / longest as f64
}

pub fn levenshtein_sim(s1: &TokenSequence, s2: &TokenSequence) -> f64 {
    levenshtein_str_sim(&s1.join(" "), &s2.join(" "))
}

/// The string measure family, in catalogue order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StringMeasure {
    Qgram,
    Jaccard,
    Block,
    LiBlock,
    Levenshtein,
    Overlap,
}

impl StringMeasure {
    pub const ALL: [StringMeasure; 6] = [
        StringMeasure::Qgram,
        StringMeasure::Jaccard,
        StringMeasure::Block,
        StringMeasure::LiBlock,
        StringMeasure::Levenshtein,
        StringMeasure::Overlap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StringMeasure::Qgram => "qgram",
            StringMeasure::Jaccard => "jaccard",
            StringMeasure::Block => "block",
            StringMeasure::LiBlock => "liblock",
            StringMeasure::Levenshtein => "levenshtein",
            StringMeasure::Overlap => "overlap",
        }
    }

    /// Scores a pair; q-grams use `q = 3` over tokens.
    pub fn score(self, s1: &TokenSequence, s2: &TokenSequence) -> Result<f64, SimError> {
        match self {
            StringMeasure::Qgram => qgram_sim(s1, s2, 3, QgramUnit::Tokens),
            StringMeasure::Jaccard => jaccard_sim(&WordSet::new(s1), &WordSet::new(s2)),
            StringMeasure::Block => block_distance_sim(s1, s2),
            StringMeasure::LiBlock => liblock_sim(s1, s2),
            StringMeasure::Levenshtein => Ok(levenshtein_sim(s1, s2)),
            StringMeasure::Overlap => overlap_sim(&WordSet::new(s1), &WordSet::new(s2)),
        }
    }
}

impl fmt::Display for StringMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StringMeasure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StringMeasure::ALL
            .into_iter()
            .find(|m| m.name() == s.trim())
            .ok_or_else(|| format!("unknown string measure `{s}`"))
    }
}

use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use super::taxonomy::{ConceptIdx, Taxonomy};
use super::TaxonomyError;

/// Maps surface forms (case-insensitive) to taxonomy concepts.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: HashMap<String, Vec<ConceptIdx>>,
}

impl Lexicon {
    /// Reads `surface<TAB>concept[,concept...]` lines; every concept must exist in `tax`.
    pub fn load(path: impl AsRef<Path>, tax: &Taxonomy) -> Result<Self, TaxonomyError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| TaxonomyError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text, tax)
    }

    pub fn parse(text: &str, tax: &Taxonomy) -> Result<Self, TaxonomyError> {
        let mut lex = Lexicon::default();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (surface, concepts) = line.split_once('\t').ok_or_else(|| TaxonomyError::Parse {
                line: idx + 1,
                message: "expected `surface<TAB>concept[,concept...]`".into(),
            })?;
            for code in concepts.split(',').map(str::trim).filter(|c| !c.is_empty()) {
                let c = tax.lookup(code).ok_or_else(|| TaxonomyError::UnknownLexiconConcept {
                    surface: surface.to_string(),
                    concept: code.to_string(),
                })?;
                lex.insert_idx(surface, c);
            }
        }
        Ok(lex)
    }

    fn insert_idx(&mut self, surface: &str, c: ConceptIdx) {
        let list = self.entries.entry(surface.trim().to_lowercase()).or_default();
        if !list.contains(&c) {
            list.push(c);
        }
    }

    pub fn insert(&mut self, surface: &str, concept: &str, tax: &Taxonomy) -> Result<(), TaxonomyError> {
        let c = tax
            .lookup(concept)
            .ok_or_else(|| TaxonomyError::UnknownLexiconConcept {
                surface: surface.to_string(),
                concept: concept.to_string(),
            })?;
        self.insert_idx(surface, c);
        Ok(())
    }

    pub fn concepts(&self, word: &str) -> &[ConceptIdx] {
        self.entries.get(&word.to_lowercase()).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Intrinsic information content per node:
/// `IC(c) = −ln((leaves(c)/subsumers(c) + 1) / (total_leaves + 1))`.
#[derive(Debug, Clone)]
pub struct IcModel {
    ic: Vec<f64>,
    max: f64,
}

impl IcModel {
    pub fn sanchez(tax: &Taxonomy) -> Self {
        let total = f64::from(tax.total_leaves()) + 1.0;
        let ic: Vec<f64> = (0..tax.len())
            .map(|c| {
                let ratio = f64::from(tax.leaves(c)) / f64::from(tax.subsumers(c));
                // clamp the root's -0.0
                (-((ratio + 1.0) / total).ln()).max(0.0)
            })
            .collect();
        let max = ic.iter().copied().fold(0.0, f64::max);
        IcModel { ic, max }
    }

    pub fn ic(&self, c: ConceptIdx) -> f64 {
        self.ic[c]
    }

    pub fn max(&self) -> f64 {
        self.max
    }
}

pub fn ic_sanchez(tax: &Taxonomy, concept: &str) -> Result<f64, TaxonomyError> {
    let c = tax.require(concept)?;
    let total = f64::from(tax.total_leaves()) + 1.0;
    let ratio = f64::from(tax.leaves(c)) / f64::from(tax.subsumers(c));
    Ok((-((ratio + 1.0) / total).ln()).max(0.0))
}

/// Similarity of two words or tokens in `[0,1]`, with `sim(w,w) = 1`.
pub trait WordSimilarity {
    fn word_sim(&self, a: &str, b: &str) -> f64;
}

/// 1 for equal strings, 0 otherwise.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactMatch;

impl WordSimilarity for ExactMatch {
    fn word_sim(&self, a: &str, b: &str) -> f64 {
        if a == b {
            1.0
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WordSimKind {
    Rada,
    JiangConrath,
}

/// An ontology word measure: a path or IC similarity over a taxonomy plus the lexicon
/// that maps words onto it.
#[derive(Debug, Clone)]
pub struct WordSimMeasure {
    kind: WordSimKind,
    taxonomy: Arc<Taxonomy>,
    lexicon: Arc<Lexicon>,
    ic: Option<Arc<IcModel>>,
}

impl WordSimMeasure {
    pub fn rada(taxonomy: Arc<Taxonomy>, lexicon: Arc<Lexicon>) -> Self {
        WordSimMeasure {
            kind: WordSimKind::Rada,
            taxonomy,
            lexicon,
            ic: None,
        }
    }

    pub fn jiang_conrath(taxonomy: Arc<Taxonomy>, lexicon: Arc<Lexicon>) -> Self {
        let ic = Arc::new(IcModel::sanchez(&taxonomy));
        Self::jiang_conrath_with(taxonomy, lexicon, ic)
    }

    /// J&C with a precomputed IC model, so several measures can share one.
    pub fn jiang_conrath_with(taxonomy: Arc<Taxonomy>, lexicon: Arc<Lexicon>, ic: Arc<IcModel>) -> Self {
        WordSimMeasure {
            kind: WordSimKind::JiangConrath,
            taxonomy,
            lexicon,
            ic: Some(ic),
        }
    }

    pub fn kind(&self) -> WordSimKind {
        self.kind
    }

    pub fn taxonomy(&self) -> &Taxonomy {
        &self.taxonomy
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    /// Best similarity over all concept pairs.
    pub fn concept_sim(&self, a: &[ConceptIdx], b: &[ConceptIdx]) -> f64 {
        match self.kind {
            WordSimKind::Rada => {
                let Some(len) = self.taxonomy.min_path_len(a, b) else {
                    return 0.0;
                };
                let max_depth = self.taxonomy.max_depth();
                if max_depth == 0 {
                    return 1.0;
                }
                (1.0 - f64::from(len) / (2.0 * f64::from(max_depth))).clamp(0.0, 1.0)
            }
            WordSimKind::JiangConrath => {
                let ic = self.ic.as_ref().expect("J&C measure carries an IC model");
                let Some(dist) = self.jc_distance(ic, a, b) else {
                    return 0.0;
                };
                if ic.max() == 0.0 {
                    return 1.0;
                }
                (1.0 - (dist / (2.0 * ic.max())).min(1.0)).clamp(0.0, 1.0)
            }
        }
    }

    fn jc_distance(&self, ic: &IcModel, a: &[ConceptIdx], b: &[ConceptIdx]) -> Option<f64> {
        let mut best: Option<f64> = None;
        for &x in a {
            let anc_x = self.taxonomy.ancestor_indices(x);
            for &y in b {
                let mica = self
                    .taxonomy
                    .ancestor_indices(y)
                    .into_iter()
                    .filter(|c| anc_x.contains(c))
                    .map(|c| ic.ic(c))
                    .fold(0.0, f64::max);
                let d = ic.ic(x) + ic.ic(y) - 2.0 * mica;
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
        best
    }

    fn mapped_or_exact(&self, a: &str, b: &str, ca: &[ConceptIdx], cb: &[ConceptIdx]) -> f64 {
        if ca.is_empty() || cb.is_empty() {
            return ExactMatch.word_sim(a, b);
        }
        self.concept_sim(ca, cb)
    }

    /// Words resolved through the lexicon; unmapped words fall back to exact match.
    pub fn word_based(&self) -> WordBased<'_> {
        WordBased(self)
    }

    /// Tokens naming a taxonomy concept resolve to it directly; other tokens compare by exact match.
    pub fn concept_based(&self) -> ConceptBased<'_> {
        ConceptBased(self)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct WordBased<'a>(&'a WordSimMeasure);

impl WordSimilarity for WordBased<'_> {
    fn word_sim(&self, a: &str, b: &str) -> f64 {
        let m = self.0;
        m.mapped_or_exact(a, b, m.lexicon.concepts(a), m.lexicon.concepts(b))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ConceptBased<'a>(&'a WordSimMeasure);

impl WordSimilarity for ConceptBased<'_> {
    fn word_sim(&self, a: &str, b: &str) -> f64 {
        let m = self.0;
        let lookup = |t: &str| m.taxonomy.lookup(t).map(|c| vec![c]).unwrap_or_default();
        m.mapped_or_exact(a, b, &lookup(a), &lookup(b))
    }
}

/// Rada path similarity `1 − L/(2·max_depth)` between two words.
pub fn rada_word_sim(m: &WordSimMeasure, w1: &str, w2: &str) -> f64 {
    debug_assert_eq!(m.kind(), WordSimKind::Rada);
    m.word_based().word_sim(w1, w2)
}

/// Jiang & Conrath similarity `1 − min(1, d/(2·IC_max))` between two words.
pub fn jiang_conrath_word_sim(m: &WordSimMeasure, w1: &str, w2: &str) -> f64 {
    debug_assert_eq!(m.kind(), WordSimKind::JiangConrath);
    m.word_based().word_sim(w1, w2)
}

//! Measure identifiers and the shared resources needed to score with them.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::data::TokenSequence;
use crate::ontosim::{com, ubsm, wbsm, IcModel, Lexicon, Taxonomy, WordSimMeasure};
use crate::preprocess::{NerMode, PreprocessConfig, ResourceLists};
use crate::strsim::{SimError, StringMeasure};
use crate::vecsim::{swem_sim, Pooling, VectorModel};

/// Every measure the benchmark can run, identified on the command line by [`MeasureId::name`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeasureId {
    Qgram,
    Jaccard,
    Block,
    LiBlock,
    Levenshtein,
    Overlap,
    WbsmRada,
    WbsmJc,
    UbsmRada,
    UbsmJc,
    Com,
    Swem(Pooling),
}

impl MeasureId {
    pub const STRING: [MeasureId; 6] = [
        MeasureId::Qgram,
        MeasureId::Jaccard,
        MeasureId::Block,
        MeasureId::LiBlock,
        MeasureId::Levenshtein,
        MeasureId::Overlap,
    ];

    pub const ONTOLOGY: [MeasureId; 5] = [
        MeasureId::WbsmRada,
        MeasureId::WbsmJc,
        MeasureId::UbsmRada,
        MeasureId::UbsmJc,
        MeasureId::Com,
    ];

    pub fn name(&self) -> String {
        match self {
            MeasureId::Swem(p) => format!("swem:{p}"),
            other => other.fixed_name().to_string(),
        }
    }

    fn fixed_name(&self) -> &'static str {
        match self {
            MeasureId::Qgram => "qgram",
            MeasureId::Jaccard => "jaccard",
            MeasureId::Block => "block",
            MeasureId::LiBlock => "liblock",
            MeasureId::Levenshtein => "levenshtein",
            MeasureId::Overlap => "overlap",
            MeasureId::WbsmRada => "wbsm-rada",
            MeasureId::WbsmJc => "wbsm-jc",
            MeasureId::UbsmRada => "ubsm-rada",
            MeasureId::UbsmJc => "ubsm-jc",
            MeasureId::Com => "com",
            MeasureId::Swem(_) => "swem",
        }
    }

    pub fn string_measure(&self) -> Option<StringMeasure> {
        Some(match self {
            MeasureId::Qgram => StringMeasure::Qgram,
            MeasureId::Jaccard => StringMeasure::Jaccard,
            MeasureId::Block => StringMeasure::Block,
            MeasureId::LiBlock => StringMeasure::LiBlock,
            MeasureId::Levenshtein => StringMeasure::Levenshtein,
            MeasureId::Overlap => StringMeasure::Overlap,
            _ => return None,
        })
    }

    pub fn needs_taxonomy(&self) -> bool {
        Self::ONTOLOGY.contains(self)
    }

    pub fn needs_vectors(&self) -> bool {
        matches!(self, MeasureId::Swem(_))
    }

    /// Raw scores lie in `[-1, 1]` and are rescaled with `(x + 1) / 2` for reporting.
    pub fn is_signed(&self) -> bool {
        matches!(self, MeasureId::Swem(_))
    }

    /// COM also scores a word-level view of each sentence, preprocessed without NER.
    pub fn secondary_config(&self, primary: &PreprocessConfig) -> Option<PreprocessConfig> {
        (*self == MeasureId::Com).then_some(PreprocessConfig {
            ner: NerMode::None,
            ..*primary
        })
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureId::Swem(p) => write!(f, "swem:{p}"),
            other => f.write_str(other.fixed_name()),
        }
    }
}

impl FromStr for MeasureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        if let Some(mode) = s.strip_prefix("swem:") {
            return mode.parse::<Pooling>().map(MeasureId::Swem).map_err(|e| e.to_string());
        }
        Self::STRING
            .into_iter()
            .chain(Self::ONTOLOGY)
            .find(|m| m.fixed_name() == s)
            .ok_or_else(|| format!("unknown measure `{s}`"))
    }
}

/// Shared, immutable resources for scoring.
#[derive(Debug, Clone, Default)]
pub struct MeasureContext {
    pub lists: ResourceLists,
    pub taxonomy: Option<Arc<Taxonomy>>,
    pub lexicon: Option<Arc<Lexicon>>,
    pub ic: Option<Arc<IcModel>>,
    pub vectors: Option<Arc<VectorModel>>,
}

impl MeasureContext {
    pub fn new(lists: ResourceLists) -> Self {
        MeasureContext {
            lists,
            ..Default::default()
        }
    }

    /// Attaches a taxonomy and lexicon and precomputes the IC model once.
    pub fn with_ontology(mut self, taxonomy: Arc<Taxonomy>, lexicon: Arc<Lexicon>) -> Self {
        self.ic = Some(Arc::new(IcModel::sanchez(&taxonomy)));
        self.taxonomy = Some(taxonomy);
        self.lexicon = Some(lexicon);
        self
    }

    pub fn with_vectors(mut self, vectors: Arc<VectorModel>) -> Self {
        self.vectors = Some(vectors);
        self
    }

    fn word_measure(&self, id: MeasureId, jc: bool) -> Result<WordSimMeasure, String> {
        let (Some(tax), Some(lex)) = (&self.taxonomy, &self.lexicon) else {
            return Err(format!("measure `{id}` needs --taxonomy and --lexicon"));
        };
        Ok(if jc {
            let ic = self.ic.clone().unwrap_or_else(|| Arc::new(IcModel::sanchez(tax)));
            WordSimMeasure::jiang_conrath_with(tax.clone(), lex.clone(), ic)
        } else {
            WordSimMeasure::rada(tax.clone(), lex.clone())
        })
    }

    /// Resolves everything `id` needs, failing if a resource is missing.
    pub fn scorer(&self, id: MeasureId) -> Result<Scorer, String> {
        let kind = match id {
            MeasureId::WbsmRada => ScorerKind::Wbsm(self.word_measure(id, false)?),
            MeasureId::WbsmJc => ScorerKind::Wbsm(self.word_measure(id, true)?),
            MeasureId::UbsmRada => ScorerKind::Ubsm(self.word_measure(id, false)?),
            MeasureId::UbsmJc => ScorerKind::Ubsm(self.word_measure(id, true)?),
            MeasureId::Com => ScorerKind::Com(self.word_measure(id, false)?),
            MeasureId::Swem(mode) => match &self.vectors {
                Some(v) => ScorerKind::Swem(v.clone(), mode),
                None => return Err(format!("measure `{id}` needs --vectors")),
            },
            other => ScorerKind::String(other.string_measure().expect("string measure")),
        };
        Ok(Scorer { id, kind })
    }
}

#[derive(Debug, Clone)]
enum ScorerKind {
    String(StringMeasure),
    Wbsm(WordSimMeasure),
    Ubsm(WordSimMeasure),
    Com(WordSimMeasure),
    Swem(Arc<VectorModel>, Pooling),
}

/// A measure with its resources resolved; cheap to share across threads.
#[derive(Debug, Clone)]
pub struct Scorer {
    id: MeasureId,
    kind: ScorerKind,
}

impl Scorer {
    pub fn id(&self) -> MeasureId {
        self.id
    }

    /// Raw score of a pair. `secondary` is the word-level view used by COM; when absent
    /// COM reuses the primary sequences for its WBSM half.
    pub fn score(
        &self,
        s1: &TokenSequence,
        s2: &TokenSequence,
        secondary: Option<(&TokenSequence, &TokenSequence)>,
    ) -> Result<f64, SimError> {
        match &self.kind {
            ScorerKind::String(m) => m.score(s1, s2),
            ScorerKind::Wbsm(m) => wbsm(s1, s2, m),
            ScorerKind::Ubsm(m) => ubsm(s1, s2, m),
            ScorerKind::Com(m) => {
                let (w1, w2) = secondary.unwrap_or((s1, s2));
                Ok(com(wbsm(w1, w2, m)?, ubsm(s1, s2, m)?))
            }
            ScorerKind::Swem(v, mode) => Ok(swem_sim(s1, s2, v, *mode)),
        }
    }

    /// Score mapped into `[0, 1]`.
    pub fn score_normalized(
        &self,
        s1: &TokenSequence,
        s2: &TokenSequence,
        secondary: Option<(&TokenSequence, &TokenSequence)>,
    ) -> Result<f64, SimError> {
        let raw = self.score(s1, s2, secondary)?;
        Ok(if self.id.is_signed() { (raw + 1.0) / 2.0 } else { raw })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        let mut all: Vec<MeasureId> = MeasureId::STRING.into_iter().chain(MeasureId::ONTOLOGY).collect();
        all.extend(Pooling::ALL.map(MeasureId::Swem));
        for id in all {
            assert_eq!(id.to_string().parse::<MeasureId>().unwrap(), id);
            assert_eq!(id.name(), id.to_string());
        }
        assert_eq!("SWEM:Min".parse::<MeasureId>().unwrap(), MeasureId::Swem(Pooling::Min));
        assert!("swem:median".parse::<MeasureId>().is_err());
        assert!("cosine".parse::<MeasureId>().is_err());
    }

    #[test]
    fn missing_resources_are_reported() {
        let ctx = MeasureContext::default();
        assert!(ctx.scorer(MeasureId::Block).is_ok());
        assert!(ctx.scorer(MeasureId::WbsmRada).unwrap_err().contains("--taxonomy"));
        assert!(ctx
            .scorer(MeasureId::Swem(Pooling::Mean))
            .unwrap_err()
            .contains("--vectors"));
    }

    #[test]
    fn swem_rescaled() {
        let v = VectorModel::parse("a 1 0\nb -1 0\n", None).unwrap();
        let ctx = MeasureContext::default().with_vectors(Arc::new(v));
        let s = ctx.scorer(MeasureId::Swem(Pooling::Mean)).unwrap();
        let (a, b) = (TokenSequence::from_words("a"), TokenSequence::from_words("b"));
        assert_eq!(s.score(&a, &b, None).unwrap(), -1.0);
        assert_eq!(s.score_normalized(&a, &b, None).unwrap(), 0.0);
        assert_eq!(s.score_normalized(&a, &a, None).unwrap(), 1.0);
    }

    #[test]
    fn com_secondary_config() {
        let cfg = PreprocessConfig {
            ner: NerMode::Annotations,
            ..PreprocessConfig::default()
        };
        let sec = MeasureId::Com.secondary_config(&cfg).unwrap();
        assert_eq!(sec.ner, NerMode::None);
        assert_eq!(sec.stopwords, cfg.stopwords);
        assert!(MeasureId::Block.secondary_config(&cfg).is_none());
    }
}

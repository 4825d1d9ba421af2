//! Ontology-based similarity: taxonomy structure, Rada and Jiang & Conrath word measures,
//! and the WBSM / UBSM / COM sentence measures built on them.
//!
//! Path lengths are exact breadth-first distances over undirected is-a links. Information
//! content follows the intrinsic leaves/subsumers model. Words map onto concepts through a
//! [`Lexicon`]; a word with several concepts scores by its best concept pair, and a word
//! with none falls back to exact string match.

mod sentence;
mod taxonomy;
mod word;

pub use sentence::{com, semantic_vector_sim, ubsm, wbsm, COM_LAMBDA};
pub use taxonomy::{ConceptIdx, Taxonomy};
pub use word::{
    ic_sanchez, jiang_conrath_word_sim, rada_word_sim, ConceptBased, ExactMatch, IcModel, Lexicon, WordBased,
    WordSimKind, WordSimMeasure, WordSimilarity,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TaxonomyError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("taxonomy has no nodes")]
    Empty,
    #[error("is-a cycle through `{0}`")]
    Cycle(String),
    #[error("taxonomy has several roots: {}", .0.join(", "))]
    MultipleRoots(Vec<String>),
    #[error("unknown concept `{0}`")]
    UnknownConcept(String),
    #[error("lexicon entry `{surface}` names unknown concept `{concept}`")]
    UnknownLexiconConcept { surface: String, concept: String },
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::data::TokenSequence;
    use crate::strsim::{li_adapted_sim, WordSet};

    fn ts(s: &str) -> TokenSequence {
        TokenSequence::from_words(s)
    }

    #[test]
    fn exact_match_vectors_reduce_to_li_adapted() {
        let (a, b) = (ts("a b"), ts("b c"));
        let v = semantic_vector_sim(&WordSet::new(&a), &WordSet::new(&b), &ExactMatch).unwrap();
        assert!((v - 0.5).abs() < 1e-15);

        let s1 = ts("c0280089 formation mice oncogenic c1537502 requires formation craf c0812241");
        let s2 = ts("oncogenic activity mutant c1537502 appears dependent functional craf c0812241");
        let (w1, w2) = (WordSet::new(&s1), WordSet::new(&s2));
        let sv = semantic_vector_sim(&w1, &w2, &ExactMatch).unwrap();
        assert_eq!(sv.to_bits(), li_adapted_sim(&w1, &w2).unwrap().to_bits());
        assert!((sv - 0.471).abs() < 5e-4);
    }

    #[test]
    fn semantic_vectors_edge_cases() {
        let a = ts("x y");
        let b = ts("p q");
        let (wa, wb) = (WordSet::new(&a), WordSet::new(&b));
        assert_eq!(semantic_vector_sim(&wa, &wa, &ExactMatch).unwrap(), 1.0);
        assert_eq!(semantic_vector_sim(&wa, &wb, &ExactMatch).unwrap(), 0.0);
        assert!(semantic_vector_sim(&wa, &WordSet::default(), &ExactMatch).is_err());
    }

    fn medical() -> WordSimMeasure {
        let tax = Arc::new(Taxonomy::parse("C1\nC2\tC1\nC3\tC1\nC0280089\tC2\nC1537502\tC3\nC0812241\tC3\n").unwrap());
        let mut lex = Lexicon::default();
        lex.insert("tumour", "C0280089", &tax).unwrap();
        lex.insert("kras", "C1537502", &tax).unwrap();
        lex.insert("braf", "C0812241", &tax).unwrap();
        WordSimMeasure::rada(tax, Arc::new(lex))
    }

    #[test]
    fn wbsm_and_ubsm() {
        let m = medical();
        let s = ts("kras braf mice");
        assert_eq!(wbsm(&s, &s, &m).unwrap(), 1.0);
        let c = ts("c1537502 c0812241 mice");
        assert_eq!(ubsm(&c, &c, &m).unwrap(), 1.0);
        // kras and braf are siblings, Rada s = 1 - 2/4; vectors (s, 1) and (1, s)
        let s = 0.5;
        let expected = 2.0 * s / (1.0 + s * s);
        let v = wbsm(&ts("kras"), &ts("braf"), &m).unwrap();
        assert!((v - expected).abs() < 1e-15);
        let v = ubsm(&ts("c1537502"), &ts("c0812241"), &m).unwrap();
        assert!((v - expected).abs() < 1e-15);
        // no mapping and no shared strings
        assert_eq!(wbsm(&ts("alpha beta"), &ts("gamma"), &m).unwrap(), 0.0);
    }

    #[test]
    fn com_combination() {
        assert!((com(0.6, 0.8) - 0.7).abs() < 1e-15);
        assert_eq!(com(1.0, 1.0), 1.0);
        assert_eq!(com(0.37, 0.37), 0.37);
    }
}

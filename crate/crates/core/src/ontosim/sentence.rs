use std::collections::HashMap;

use super::word::{WordSimMeasure, WordSimilarity};
use crate::data::TokenSequence;
use crate::strsim::{cosine_from_parts, SimError, WordSet};

/// Weight of WBSM-Rada in [`com`].
pub const COM_LAMBDA: f64 = 0.5;

/// Semantic-vector cosine over the joint word set `T = S1 ∪ S2`.
///
/// Entry `i` of the vector for `S1` is `max_{w ∈ S1} sim(t_i, w)`, and likewise for `S2`.
/// With exact-match word similarity the vectors are the binary indicator vectors of the
/// two sets and the result equals [`crate::strsim::li_adapted_sim`] bit for bit.
pub fn semantic_vector_sim<'a>(
    set1: &WordSet<'a>,
    set2: &WordSet<'a>,
    sim: &dyn WordSimilarity,
) -> Result<f64, SimError> {
    if set1.is_empty() || set2.is_empty() {
        return Err(SimError::EmptyInput {
            measure: "semantic-vector",
        });
    }
    let joint = set1.union(set2);
    let mut cache: HashMap<(&'a str, &'a str), f64> = HashMap::new();
    let mut best = |t: &'a str, set: &WordSet<'a>| -> f64 {
        if set.contains(t) {
            return 1.0;
        }
        let mut m: f64 = 0.0;
        for w in set.iter() {
            let key = if t <= w { (t, w) } else { (w, t) };
            let v = *cache.entry(key).or_insert_with(|| sim.word_sim(key.0, key.1));
            m = m.max(v);
            if m >= 1.0 {
                break;
            }
        }
        m
    };
    let (mut dot, mut n1, mut n2) = (0.0, 0.0, 0.0);
    for &t in &joint {
        let a = best(t, set1);
        let b = best(t, set2);
        dot += a * b;
        n1 += a * a;
        n2 += b * b;
    }
    if n1 == 0.0 || n2 == 0.0 {
        return Ok(0.0);
    }
    Ok(cosine_from_parts(dot, n1, n2).clamp(0.0, 1.0))
}

/// Word-based sentence measure: tokens are mapped through the lexicon.
pub fn wbsm(s1: &TokenSequence, s2: &TokenSequence, m: &WordSimMeasure) -> Result<f64, SimError> {
    semantic_vector_sim(&WordSet::new(s1), &WordSet::new(s2), &m.word_based())
}

/// Concept-based sentence measure: concept-code tokens are taxonomy nodes, residual
/// words compare by exact match.
pub fn ubsm(s1: &TokenSequence, s2: &TokenSequence, m: &WordSimMeasure) -> Result<f64, SimError> {
    semantic_vector_sim(&WordSet::new(s1), &WordSet::new(s2), &m.concept_based())
}

/// `λ·WBSM-Rada + (1−λ)·UBSM-Rada` with `λ = 0.5`.
pub fn com(wbsm_rada: f64, ubsm_rada: f64) -> f64 {
    COM_LAMBDA * wbsm_rada + (1.0 - COM_LAMBDA) * ubsm_rada
}

use proptest::prelude::*;
use sts_core::strsim::{
    block_distance_sim, levenshtein_distance, li_adapted_sim, liblock_sim, qgram_sim, QgramUnit, StringMeasure, WordSet,
};
use sts_core::vecsim::{pool, swem_sim, Pooling, VectorModel};
use sts_core::TokenSequence;

/// Tokens drawn from a small vocabulary so that random pairs overlap often.
fn seq() -> impl Strategy<Value = TokenSequence> {
    proptest::collection::vec(
        prop::sample::select(vec!["a", "b", "c", "d", "e", "f", "g", "hh", "ii", "jj"]),
        1..12,
    )
    .prop_map(TokenSequence::from_iter)
}

fn naive_block(s1: &TokenSequence, s2: &TokenSequence) -> f64 {
    let mut l1 = 0usize;
    let mut vocab: Vec<&str> = s1.iter().chain(s2.iter()).collect();
    vocab.sort_unstable();
    vocab.dedup();
    for w in vocab {
        let c1 = s1.iter().filter(|t| *t == w).count();
        let c2 = s2.iter().filter(|t| *t == w).count();
        l1 += c1.abs_diff(c2);
    }
    1.0 - l1 as f64 / (s1.len() + s2.len()) as f64
}

fn explicit_binary_cosine(s1: &TokenSequence, s2: &TokenSequence) -> f64 {
    let mut d: Vec<&str> = s1.iter().chain(s2.iter()).collect();
    d.sort_unstable();
    d.dedup();
    let (mut dot, mut n1, mut n2) = (0.0f64, 0.0f64, 0.0f64);
    for w in d {
        let a = if s1.iter().any(|t| t == w) { 1.0 } else { 0.0 };
        let b = if s2.iter().any(|t| t == w) { 1.0 } else { 0.0 };
        dot += a * b;
        n1 += a * a;
        n2 += b * b;
    }
    dot / (n1 * n2).sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn string_measures_symmetric_bounded_reflexive(a in seq(), b in seq()) {
        for m in StringMeasure::ALL {
            let ab = m.score(&a, &b).unwrap();
            let ba = m.score(&b, &a).unwrap();
            prop_assert_eq!(ab, ba, "{} not symmetric", m);
            prop_assert!((0.0..=1.0).contains(&ab), "{} out of range: {}", m, ab);
            prop_assert_eq!(m.score(&a, &a).unwrap(), 1.0, "{} self-similarity", m);
        }
    }

    #[test]
    fn char_qgrams_symmetric_bounded(a in seq(), b in seq(), q in 1usize..4) {
        let ab = qgram_sim(&a, &b, q, QgramUnit::Chars).unwrap();
        prop_assert_eq!(ab, qgram_sim(&b, &a, q, QgramUnit::Chars).unwrap());
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert_eq!(qgram_sim(&a, &a, q, QgramUnit::Chars).unwrap(), 1.0);
    }

    #[test]
    fn liblock_falls_back_to_block_on_disjoint_vocab(a in seq(), b in seq()) {
        let b: TokenSequence = b.iter().map(|t| format!("{t}_x")).collect();
        prop_assert_eq!(liblock_sim(&a, &b).unwrap(), block_distance_sim(&a, &b).unwrap());
    }

    #[test]
    fn block_matches_naive_profile_loop(a in seq(), b in seq()) {
        let got = block_distance_sim(&a, &b).unwrap();
        prop_assert!((got - naive_block(&a, &b)).abs() < 1e-15);
    }

    #[test]
    fn li_adapted_matches_binary_vectors(a in seq(), b in seq()) {
        let got = li_adapted_sim(&WordSet::new(&a), &WordSet::new(&b)).unwrap();
        prop_assert_eq!(got.to_bits(), explicit_binary_cosine(&a, &b).to_bits());
    }

    #[test]
    fn levenshtein_triangle_inequality(x in "[abc]{0,12}", y in "[abc]{0,12}", z in "[abc]{0,12}") {
        let d = |p: &str, q: &str| levenshtein_distance(p, q);
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z));
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert_eq!(d(&x, &x), 0);
    }
}

fn model_strategy() -> impl Strategy<Value = VectorModel> {
    proptest::collection::vec(proptest::collection::vec(-2.0f32..2.0, 3), 6).prop_map(|vs| {
        VectorModel::from_rows(
            vs.into_iter()
                .enumerate()
                .map(|(i, v)| (["a", "b", "c", "d", "e", "f"][i].to_string(), v)),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn pooling_ignores_token_order(m in model_strategy(), a in seq(), shift in 0usize..12) {
        let mut rotated = a.tokens().to_vec();
        let k = shift % rotated.len();
        rotated.rotate_left(k);
        let rotated = TokenSequence::from_iter(rotated);
        for mode in Pooling::ALL {
            let (p, q) = (pool(&a, &m, mode), pool(&rotated, &m, mode));
            match (p, q) {
                (Some(p), Some(q)) => {
                    for (x, y) in p.iter().zip(&q) {
                        prop_assert!((x - y).abs() < 1e-12);
                    }
                }
                (p, q) => prop_assert_eq!(p, q),
            }
        }
    }

    #[test]
    fn swem_symmetric_scale_invariant(m in model_strategy(), a in seq(), b in seq(), k in 0.1f32..10.0) {
        let scaled = m.scaled(k);
        for mode in Pooling::ALL {
            let ab = swem_sim(&a, &b, &m, mode);
            prop_assert_eq!(ab, swem_sim(&b, &a, &m, mode));
            prop_assert!((-1.0..=1.0).contains(&ab));
            let ks = swem_sim(&a, &b, &scaled, mode);
            prop_assert!((ab - ks).abs() < 1e-5, "{} {} vs {}", mode, ab, ks);
        }
    }

    #[test]
    fn vector_file_round_trip(m in model_strategy()) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v.txt");
        m.write(&path).unwrap();
        let back = sts_core::vecsim::load_vectors(&path, Some(3)).unwrap();
        prop_assert_eq!(back, m);
    }
}

#[test]
fn swem_identical_in_vocab_sentences_score_one() {
    let m = VectorModel::parse("w 0.3 -0.7 2\nv 1 1 1\n", None).unwrap();
    let s = TokenSequence::from_words("w oov v");
    for mode in Pooling::ALL {
        assert!((swem_sim(&s, &s, &m, mode) - 1.0).abs() < 1e-12);
    }
}

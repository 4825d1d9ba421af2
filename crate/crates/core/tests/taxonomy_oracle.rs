use std::collections::VecDeque;
use std::sync::Arc;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sts_core::ontosim::{
    com, ic_sanchez, jiang_conrath_word_sim, rada_word_sim, semantic_vector_sim, ExactMatch, IcModel, Lexicon,
    Taxonomy, WordSimMeasure,
};
use sts_core::strsim::{li_adapted_sim, WordSet};
use sts_core::TokenSequence;

/// Random single-rooted DAG: node `i > 0` gets one to three parents among `0..i`.
fn random_dag(rng: &mut StdRng, n: usize) -> (Taxonomy, Vec<Vec<usize>>) {
    let mut edges = Vec::new();
    let mut adj = vec![Vec::new(); n];
    for i in 1..n {
        let k = rng.gen_range(1..=3.min(i));
        let mut ps: Vec<usize> = (0..k).map(|_| rng.gen_range(0..i)).collect();
        ps.sort_unstable();
        ps.dedup();
        for p in ps {
            edges.push((format!("n{i}"), format!("n{p}")));
            adj[i].push(p);
            adj[p].push(i);
        }
    }
    let tax = Taxonomy::from_edges(vec!["n0".to_string()], edges).unwrap();
    (tax, adj)
}

fn bfs_all(adj: &[Vec<usize>], src: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adj.len()];
    dist[src] = 0;
    let mut q = VecDeque::from([src]);
    while let Some(u) = q.pop_front() {
        for &v in &adj[u] {
            if dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                q.push_back(v);
            }
        }
    }
    dist
}

#[test]
fn shortest_paths_match_naive_bfs() {
    let mut rng = StdRng::seed_from_u64(7);
    for round in 0..50 {
        let n = rng.gen_range(2..=200);
        let (tax, adj) = random_dag(&mut rng, n);
        for a in 0..n {
            let expected = bfs_all(&adj, a);
            for (b, want) in expected.iter().enumerate() {
                let got = tax.shortest_path_len(&format!("n{a}"), &format!("n{b}")).unwrap();
                assert_eq!(got, *want, "round {round}: n{a} -> n{b}");
            }
        }
    }
}

#[test]
fn ic_is_monotone_along_every_edge() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..50 {
        let n = rng.gen_range(2..=200);
        let (tax, _) = random_dag(&mut rng, n);
        let ic = IcModel::sanchez(&tax);
        for c in 0..tax.len() {
            assert!(ic.ic(c) >= 0.0);
            for &p in tax.parents(c) {
                assert!(ic.ic(c) >= ic.ic(p), "{} below {}", tax.name(c), tax.name(p));
            }
        }
        assert_eq!(ic_sanchez(&tax, "n0").unwrap(), 0.0);
    }
}

fn ontology(seed: u64) -> (Arc<Taxonomy>, Arc<Lexicon>) {
    let mut rng = StdRng::seed_from_u64(seed);
    let (tax, _) = random_dag(&mut rng, 40);
    let mut lex = Lexicon::default();
    for w in 0..20 {
        for _ in 0..rng.gen_range(1..=2) {
            lex.insert(&format!("w{w}"), &format!("n{}", rng.gen_range(0..40)), &tax)
                .unwrap();
        }
    }
    (Arc::new(tax), Arc::new(lex))
}

fn words() -> impl Strategy<Value = Vec<String>> {
    proptest::collection::vec(
        (0..30u32).prop_map(|i| if i < 25 { format!("w{i}") } else { format!("n{i}") }),
        1..8,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn path_length_is_a_metric(seed in 0u64..1000, a in 0usize..60, b in 0usize..60, c in 0usize..60) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (tax, _) = random_dag(&mut rng, 60);
        let d = |x: usize, y: usize| tax.shortest_path_len(&format!("n{x}"), &format!("n{y}")).unwrap();
        prop_assert_eq!(d(a, a), 0);
        prop_assert_eq!(d(a, b), d(b, a));
        prop_assert!(d(a, c) <= d(a, b) + d(b, c));
    }

    #[test]
    fn word_measures_are_symmetric_and_bounded(a in 0u32..25, b in 0u32..25, seed in 0u64..50) {
        let (tax, lex) = ontology(seed);
        let rada = WordSimMeasure::rada(tax.clone(), lex.clone());
        let jc = WordSimMeasure::jiang_conrath(tax, lex);
        let (a, b) = (format!("w{a}"), format!("w{b}"));
        for v in [rada_word_sim(&rada, &a, &b), jiang_conrath_word_sim(&jc, &a, &b)] {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        prop_assert_eq!(rada_word_sim(&rada, &a, &b), rada_word_sim(&rada, &b, &a));
        prop_assert_eq!(jiang_conrath_word_sim(&jc, &a, &b), jiang_conrath_word_sim(&jc, &b, &a));
        prop_assert_eq!(rada_word_sim(&rada, &a, &a), 1.0);
        prop_assert_eq!(jiang_conrath_word_sim(&jc, &a, &a), 1.0);
    }

    #[test]
    fn exact_match_vectors_are_li_adapted(x in words(), y in words()) {
        let (s1, s2) = (TokenSequence::from_iter(x), TokenSequence::from_iter(y));
        let (w1, w2) = (WordSet::new(&s1), WordSet::new(&s2));
        let sv = semantic_vector_sim(&w1, &w2, &ExactMatch).unwrap();
        prop_assert_eq!(sv.to_bits(), li_adapted_sim(&w1, &w2).unwrap().to_bits());
    }

    #[test]
    fn com_is_monotone(a in 0.0f64..=1.0, b in 0.0f64..=1.0, da in 0.0f64..=1.0, db in 0.0f64..=1.0) {
        prop_assert!(com(a, b) <= com((a + da).min(1.0), b));
        prop_assert!(com(a, b) <= com(a, (b + db).min(1.0)));
    }
}

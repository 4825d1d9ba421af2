use proptest::prelude::*;
use sts_core::data::{Annotation, RawSentence};
use sts_core::preprocess::{
    char_filter_stage, config_grid, lowercase_stage, ner_stage, stopword_stage, tokenize_stage, CharFilter,
    GridDimensions, NerMode, PreprocessConfig, Preprocessor, ResourceLists, StopWords, TokenizerMode,
};

fn text() -> impl Strategy<Value = String> {
    "[a-zA-Z0-9 .,;:!?()/'\"é−-]{0,60}"
}

/// Text plus up to three non-overlapping char spans annotated with synthetic codes.
fn annotated() -> impl Strategy<Value = RawSentence> {
    (text(), proptest::collection::vec(any::<prop::sample::Index>(), 0..6)).prop_map(|(t, cuts)| {
        let n = t.chars().count();
        let mut points: Vec<usize> = cuts.iter().map(|c| c.index(n + 1)).collect();
        points.sort_unstable();
        points.dedup();
        let anns: Vec<Annotation> = points
            .chunks_exact(2)
            .enumerate()
            .map(|(i, w)| Annotation::new(w[0], w[1], format!("C{:07}", i + 1)))
            .collect();
        RawSentence::with_annotations(t, anns).expect("valid spans")
    })
}

fn any_config() -> impl Strategy<Value = PreprocessConfig> {
    let grid = config_grid(&GridDimensions::full()).unwrap();
    prop::sample::select(grid)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn pipeline_equals_stage_composition(s in annotated(), cfg in any_config()) {
        let lists = ResourceLists::builtin();
        let pre = Preprocessor::new(cfg, &lists).unwrap();
        let filter = match cfg.char_filter {
            CharFilter::None => Vec::new(),
            name => lists.char_filter(name).unwrap().to_vec(),
        };
        let stop = match cfg.stopwords {
            StopWords::None => None,
            name => Some(lists.stopwords(name).unwrap()),
        };
        let pieces = tokenize_stage(&ner_stage(&s, cfg.ner), cfg.tokenizer);
        let pieces = lowercase_stage(pieces, cfg.lowercase);
        let pieces = char_filter_stage(pieces, &filter);
        let pieces = stopword_stage(pieces, stop.as_deref());
        let composed: Vec<String> = pieces.into_iter().map(|p| p.text).collect();
        prop_assert_eq!(pre.run(&s).into_inner(), composed);
    }

    #[test]
    fn tokens_are_never_empty(s in annotated(), cfg in any_config()) {
        let out = Preprocessor::new(cfg, &ResourceLists::builtin()).unwrap().run(&s);
        prop_assert!(out.iter().all(|t| !t.is_empty()));
    }

    #[test]
    fn whitespace_output_is_a_fixed_point(t in text(), cfg in any_config()) {
        let cfg = PreprocessConfig { ner: NerMode::None, tokenizer: TokenizerMode::Whitespace, ..cfg };
        let pre = Preprocessor::new(cfg, &ResourceLists::builtin()).unwrap();
        let once = pre.run(&RawSentence::new(t));
        let twice = pre.run(&RawSentence::new(once.join(" ")));
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn lowercase_is_idempotent(t in text()) {
        let cfg = PreprocessConfig { lowercase: true, ..PreprocessConfig::IDENTITY };
        let pre = Preprocessor::new(cfg, &ResourceLists::empty()).unwrap();
        let once = pre.run(&RawSentence::new(t));
        prop_assert!(once.iter().all(|w| w.to_lowercase() == w));
        prop_assert_eq!(pre.run(&RawSentence::new(once.join(" "))), once);
    }

    #[test]
    fn concepts_survive_every_config(s in annotated(), cfg in any_config()) {
        let cfg = PreprocessConfig { ner: NerMode::Annotations, ..cfg };
        let out = Preprocessor::new(cfg, &ResourceLists::builtin()).unwrap().run(&s);
        let codes: Vec<String> = s.annotations().iter().map(|a| a.code.to_lowercase()).collect();
        let found: Vec<String> = out.iter().filter(|t| codes.contains(&t.to_string())).map(str::to_string).collect();
        prop_assert_eq!(found, codes);
    }
}

#[test]
fn every_grid_config_round_trips_through_text() {
    for cfg in config_grid(&GridDimensions::full()).unwrap() {
        assert_eq!(cfg.to_string().parse::<PreprocessConfig>().unwrap(), cfg);
    }
}

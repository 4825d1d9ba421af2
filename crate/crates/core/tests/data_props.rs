use std::path::Path;

use proptest::prelude::*;
use sts_core::data::{
    load_dataset, parse_annotations, parse_dataset, read_raw_scores, write_dataset, write_raw_scores, Annotation,
    RawSentence,
};
use sts_core::{BenchmarkRun, MeasureId, PreprocessConfig};

fn sentence() -> impl Strategy<Value = String> {
    "[A-Za-z0-9é][A-Za-z0-9 .,;:()é-]{0,40}"
}

fn rows() -> impl Strategy<Value = Vec<(String, String, f64)>> {
    proptest::collection::vec((sentence(), sentence(), 0.0f64..=1.0), 1..30)
}

fn to_tsv(rows: &[(String, String, f64)]) -> String {
    rows.iter().map(|(a, b, s)| format!("{a}\t{b}\t{s}\n")).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dataset_round_trip(rows in rows()) {
        let d = parse_dataset("d", &to_tsv(&rows), Path::new("mem")).unwrap();
        prop_assert!(d.normalized_from.is_none());
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.tsv");
        write_dataset(&d, &path).unwrap();
        let back = load_dataset(&path).unwrap();
        prop_assert_eq!(back.pairs(), d.pairs());
        for (p, r) in d.pairs().iter().zip(&rows) {
            prop_assert_eq!(p.s1.text(), r.0.as_str());
            prop_assert_eq!(p.human_score, r.2);
        }
    }

    #[test]
    fn normalization_is_idempotent(rows in rows(), scale in 1.5f64..5.0) {
        let scaled: Vec<_> = rows.iter().map(|(a, b, s)| (a.clone(), b.clone(), s * scale)).collect();
        let first = parse_dataset("d", &to_tsv(&scaled), Path::new("mem"));
        let Ok(first) = first else {
            // a constant out-of-range column cannot be normalized
            prop_assert!(scaled.iter().all(|r| r.2 == scaled[0].2));
            return Ok(());
        };
        let again: Vec<_> = first.pairs().iter().map(|p| (p.s1.text().to_string(), p.s2.text().to_string(), p.human_score)).collect();
        let second = parse_dataset("d", &to_tsv(&again), Path::new("mem")).unwrap();
        prop_assert!(second.normalized_from.is_none());
        prop_assert_eq!(first.human_scores(), second.human_scores());
        prop_assert!(first.human_scores().iter().all(|s| (0.0..=1.0).contains(s)));
    }

    #[test]
    fn raw_scores_round_trip_bit_exact(scores in proptest::collection::vec(0.0f64..=1.0, 1..200)) {
        let run = BenchmarkRun {
            dataset_name: "BIOSSES".into(),
            measure_id: MeasureId::LiBlock,
            preprocess_config: PreprocessConfig::default(),
            scores,
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("raw.csv");
        write_raw_scores(&run, &path).unwrap();
        let back = read_raw_scores(&path).unwrap();
        prop_assert_eq!(back.scores.len(), run.scores.len());
        for (a, b) in back.scores.iter().zip(&run.scores) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
        prop_assert_eq!(back, run);
    }

    #[test]
    fn accepted_spans_never_overlap(spans in proptest::collection::vec((0usize..30, 1usize..6), 0..6)) {
        let text = "x".repeat(40);
        let anns: Vec<Annotation> = spans.iter().map(|&(s, l)| Annotation::new(s, s + l, "C1")).collect();
        if let Ok(sentence) = RawSentence::with_annotations(text, anns) {
            for w in sentence.annotations().windows(2) {
                prop_assert!(w[0].end <= w[1].start);
            }
        }
    }
}

#[test]
fn annotation_sidecar_errors() {
    assert!(parse_annotations("", Path::new("a.tsv")).unwrap().is_empty());
    assert!(parse_annotations("0\t1\t50\t10\tC1\n", Path::new("a.tsv")).is_err());
    assert!(parse_annotations("0\t1\t0\t4\n", Path::new("a.tsv")).is_err());
    let m = parse_annotations("0\ts1\t0\t11\tC0280089\n", Path::new("a.tsv")).unwrap();
    assert_eq!(m.values().next().unwrap()[0].code, "C0280089");
}

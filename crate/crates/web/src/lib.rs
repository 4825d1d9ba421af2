//! Browser demo: string measures on a sentence pair, an error density from pasted
//! scores, and taxonomy word similarity. Each operation returns a JSON string.
//!
//! The `*_json` functions are plain Rust so they can be tested natively; the
//! `#[wasm_bindgen]` exports wrap them and turn errors into JS exceptions.

use std::sync::Arc;

use serde_json::{json, Map, Value};
use sts_core::ontosim::{jiang_conrath_word_sim, rada_word_sim, Lexicon, Taxonomy, WordSimMeasure};
use sts_core::stats::kde;
use sts_core::strsim::{liblock_parts, StringMeasure};
use sts_core::{PreprocessConfig, Preprocessor, RawSentence, ResourceLists};
use wasm_bindgen::prelude::*;

/// Preprocesses both sentences under `config` (empty means the default) and scores
/// them with every string measure.
pub fn compare_json(s1: &str, s2: &str, config: &str) -> Result<String, String> {
    let cfg: PreprocessConfig = if config.trim().is_empty() {
        PreprocessConfig::default()
    } else {
        config.parse()?
    };
    let pre = Preprocessor::new(cfg, &ResourceLists::builtin()).map_err(|e| e.to_string())?;
    let (a, b) = (pre.run(&RawSentence::new(s1)), pre.run(&RawSentence::new(s2)));

    let mut scores = Map::new();
    let mut errors = Map::new();
    for m in StringMeasure::ALL {
        match m.score(&a, &b) {
            Ok(v) => {
                scores.insert(m.name().into(), json!(v));
            }
            Err(e) => {
                errors.insert(m.name().into(), json!(e.to_string()));
            }
        }
    }
    let parts = liblock_parts(&a, &b)
        .ok()
        .map(|p| json!({ "block": p.block, "li_adapted": p.li_adapted, "liblock": p.liblock }));
    Ok(json!({
        "config": cfg.to_string(),
        "tokens1": a.tokens(),
        "tokens2": b.tokens(),
        "scores": scores,
        "errors": errors,
        "liblock": parts,
    })
    .to_string())
}

fn parse_numbers(text: &str) -> Result<Vec<f64>, String> {
    text.split(|c: char| c.is_whitespace() || c == ',' || c == ';')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| format!("`{t}` is not a number")))
        .collect()
}

/// Gaussian KDE of whitespace- or comma-separated values, such as similarity errors.
pub fn density_json(values: &str) -> Result<String, String> {
    let x = parse_numbers(values)?;
    let k = kde(&x).map_err(|e| e.to_string())?;
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    Ok(json!({
        "n": x.len(),
        "mean": mean,
        "bandwidth": k.bandwidth.value,
        "bandwidth_fallback": k.bandwidth.fallback,
        "integral": k.integral(),
        "x": k.x,
        "density": k.density,
    })
    .to_string())
}

fn concept_names(m: &WordSimMeasure, w: &str) -> Value {
    let names: Vec<&str> = m.lexicon().concepts(w).iter().map(|&c| m.taxonomy().name(c)).collect();
    json!(names)
}

/// Rada and Jiang & Conrath similarity of two words over a `child<TAB>parent`
/// taxonomy and a `surface<TAB>concept[,concept]` lexicon.
pub fn word_similarity_json(taxonomy: &str, lexicon: &str, w1: &str, w2: &str) -> Result<String, String> {
    let tax = Arc::new(Taxonomy::parse(taxonomy).map_err(|e| format!("taxonomy: {e}"))?);
    let lex = Arc::new(Lexicon::parse(lexicon, &tax).map_err(|e| format!("lexicon: {e}"))?);
    let rada = WordSimMeasure::rada(tax.clone(), lex.clone());
    let jc = WordSimMeasure::jiang_conrath(tax.clone(), lex.clone());
    let (c1, c2) = (lex.concepts(w1), lex.concepts(w2));
    let path = tax.min_path_len(c1, c2);
    Ok(json!({
        "concepts1": concept_names(&rada, w1),
        "concepts2": concept_names(&rada, w2),
        "exact_fallback": c1.is_empty() || c2.is_empty(),
        "path_len": path,
        "max_depth": tax.max_depth(),
        "rada": rada_word_sim(&rada, w1, w2),
        "jiang_conrath": jiang_conrath_word_sim(&jc, w1, w2),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn compare(s1: &str, s2: &str, config: &str) -> Result<String, JsError> {
    compare_json(s1, s2, config).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn density(values: &str) -> Result<String, JsError> {
    density_json(values).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn word_similarity(taxonomy: &str, lexicon: &str, w1: &str, w2: &str) -> Result<String, JsError> {
    word_similarity_json(taxonomy, lexicon, w1, w2).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn compare_reports_all_string_measures() {
        let v = parse(&compare_json("The cat sat on the mat.", "A cat sat on a mat.", "").unwrap());
        assert_eq!(v["scores"].as_object().unwrap().len(), 6);
        assert_eq!(v["tokens1"], json!(["cat", "sat", "mat"]));
        assert_eq!(v["scores"]["liblock"], v["liblock"]["liblock"]);
        assert_eq!(v["scores"]["jaccard"], json!(1.0));
    }

    #[test]
    fn compare_surfaces_empty_sequences_and_bad_configs() {
        let v = parse(&compare_json("the of", "and", "").unwrap());
        assert!(v["errors"].as_object().unwrap().contains_key("block"));
        assert!(v["liblock"].is_null());
        let raw = parse(&compare_json("the of", "and", "stopwords=none").unwrap());
        assert_eq!(
            raw["config"],
            json!("ner=none;tokenizer=whitespace;lowercase=yes;char-filter=biosses;stopwords=none")
        );
        assert!(compare_json("a", "b", "tokenizer=bogus").is_err());
    }

    #[test]
    fn density_integrates_to_one() {
        let v = parse(&density_json("-0.2, 0.1 0.05\n0.3;-0.1").unwrap());
        assert_eq!(v["n"], json!(5));
        assert!((v["integral"].as_f64().unwrap() - 1.0).abs() < 1e-3);
        assert_eq!(v["x"].as_array().unwrap().len(), 512);
        assert!(density_json("0.1 zero").is_err());
        assert!(density_json("").is_err());
    }

    #[test]
    fn word_similarity_over_small_taxonomy() {
        let tax = "disease\troot\ncancer\tdisease\nmelanoma\tcancer\nleukemia\tcancer\n";
        let lex = "melanoma\tmelanoma\nleukaemia\tleukemia\nleukemia\tleukemia\n";
        let v = parse(&word_similarity_json(tax, lex, "melanoma", "leukaemia").unwrap());
        assert_eq!(v["path_len"], json!(2));
        assert_eq!(v["max_depth"], json!(3));
        assert!((v["rada"].as_f64().unwrap() - (1.0 - 2.0 / 6.0)).abs() < 1e-12);
        let same = parse(&word_similarity_json(tax, lex, "leukemia", "leukaemia").unwrap());
        assert_eq!(same["rada"], json!(1.0));
        assert_eq!(same["jiang_conrath"], json!(1.0));
        let unmapped = parse(&word_similarity_json(tax, lex, "melanoma", "flu").unwrap());
        assert_eq!(unmapped["exact_fallback"], json!(true));
        assert_eq!(unmapped["rada"], json!(0.0));
        assert!(word_similarity_json(tax, "x\tnowhere\n", "x", "y").is_err());
    }
}

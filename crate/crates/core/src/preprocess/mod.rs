//! Sentence pre-processing.
//!
//! A sentence goes through five stages, always in this order:
//!
//! 1. NER substitution: every annotated span is replaced by its (lower-cased) concept code,
//!    which from then on is an opaque token untouched by the later stages.
//! 2. Tokenization ([`TokenizerMode`]).
//! 3. Lower-casing (optional).
//! 4. Character filtering: deletions and replacements from a [`CharFilter`] list; a token
//!    that the filter splits on whitespace becomes several tokens, one that it empties is dropped.
//! 5. Stop-word removal (case-insensitive).
//!
//! Each stage is exposed as a function so the composition can be checked in isolation.

mod grid;
mod resources;
mod tokenize;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub use grid::{config_grid, GridDimensions};
pub use resources::{FilterRule, ResourceLists};
pub use tokenize::{tokenize, tokenize_str};

use crate::data::{RawSentence, TokenSequence};

#[derive(Debug, thiserror::Error)]
pub enum PreprocessError {
    #[error("no resource list named `{name}` for {kind}")]
    MissingResource { kind: &'static str, name: String },
    #[error("{origin}:{line}: {message}")]
    BadResource {
        origin: String,
        line: usize,
        message: String,
    },
    #[error("grid dimension `{0}` has no values")]
    EmptyDimension(&'static str),
    #[error("{0}")]
    Parse(String),
}

macro_rules! named_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name { $($variant),+ }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn name(self) -> &'static str {
                match self { $($name::$variant => $text),+ }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $name {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                let s = s.trim().to_ascii_lowercase();
                $(if s == $text { return Ok($name::$variant); })+
                Err(format!(
                    "unknown {} `{}` (expected one of: {})",
                    stringify!($name),
                    s,
                    [$($text),+].join(", ")
                ))
            }
        }
    };
}

named_enum!(
    /// Source of concept annotations.
    NerMode { None => "none", Annotations => "annotations" }
);
named_enum!(
    TokenizerMode { Whitespace => "whitespace", Treebank => "treebank" }
);
named_enum!(
    CharFilter {
        None => "none",
        Default => "default",
        Biosses => "biosses",
        Blagec2019 => "blagec2019",
    }
);
named_enum!(
    StopWords { None => "none", Biosses => "biosses", Nltk2018 => "nltk2018" }
);

/// One point of the pre-processing grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PreprocessConfig {
    pub ner: NerMode,
    pub tokenizer: TokenizerMode,
    pub lowercase: bool,
    pub char_filter: CharFilter,
    pub stopwords: StopWords,
}

impl PreprocessConfig {
    /// Every stage disabled: whitespace split only.
    pub const IDENTITY: PreprocessConfig = PreprocessConfig {
        ner: NerMode::None,
        tokenizer: TokenizerMode::Whitespace,
        lowercase: false,
        char_filter: CharFilter::None,
        stopwords: StopWords::None,
    };
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        PreprocessConfig {
            ner: NerMode::None,
            tokenizer: TokenizerMode::Whitespace,
            lowercase: true,
            char_filter: CharFilter::Biosses,
            stopwords: StopWords::Nltk2018,
        }
    }
}

pub(crate) fn parse_bool(s: &str) -> Result<bool, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "yes" | "true" | "on" | "1" => Ok(true),
        "no" | "false" | "off" | "0" => Ok(false),
        other => Err(format!("expected yes/no, found `{other}`")),
    }
}

/// Renders as `ner=none;tokenizer=whitespace;lowercase=yes;char-filter=biosses;stopwords=nltk2018`.
impl fmt::Display for PreprocessConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ner={};tokenizer={};lowercase={};char-filter={};stopwords={}",
            self.ner,
            self.tokenizer,
            if self.lowercase { "yes" } else { "no" },
            self.char_filter,
            self.stopwords
        )
    }
}

/// Parses `key=value` items separated by `;` (or `,`). Missing keys keep their defaults.
impl FromStr for PreprocessConfig {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cfg = PreprocessConfig::default();
        for item in s.split([';', ',']).map(str::trim).filter(|i| !i.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, found `{item}`"))?;
            match k.trim() {
                "ner" => cfg.ner = v.parse()?,
                "tokenizer" | "tok" => cfg.tokenizer = v.parse()?,
                "lowercase" | "lc" => cfg.lowercase = parse_bool(v)?,
                "char-filter" | "char_filter" | "cf" => cfg.char_filter = v.parse()?,
                "stopwords" | "sw" => cfg.stopwords = v.parse()?,
                other => return Err(format!("unknown preprocessing key `{other}`")),
            }
        }
        Ok(cfg)
    }
}

/// Output of the NER stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segment {
    Text(String),
    Concept(String),
}

/// A token travelling through the pipeline; concept tokens are never altered or removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub text: String,
    pub concept: bool,
}

impl Piece {
    fn word(text: impl Into<String>) -> Self {
        Piece {
            text: text.into(),
            concept: false,
        }
    }
}

/// Stage 1. With [`NerMode::None`] the annotations are ignored.
pub fn ner_stage(sentence: &RawSentence, mode: NerMode) -> Vec<Segment> {
    let text = sentence.text();
    if mode == NerMode::None || sentence.annotations().is_empty() {
        return vec![Segment::Text(text.to_string())];
    }
    // char offset -> byte offset, with one extra entry for the end of the text
    let mut offsets: Vec<usize> = text.char_indices().map(|(b, _)| b).collect();
    offsets.push(text.len());
    let mut segments = Vec::new();
    let mut cursor = 0;
    for a in sentence.annotations() {
        let (start, end) = (offsets[a.start], offsets[a.end]);
        if start > cursor {
            segments.push(Segment::Text(text[cursor..start].to_string()));
        }
        segments.push(Segment::Concept(a.code.to_lowercase()));
        cursor = end;
    }
    if cursor < text.len() {
        segments.push(Segment::Text(text[cursor..].to_string()));
    }
    segments
}

/// Stage 2.
pub fn tokenize_stage(segments: &[Segment], mode: TokenizerMode) -> Vec<Piece> {
    let mut out = Vec::new();
    for seg in segments {
        match seg {
            Segment::Text(t) => out.extend(tokenize_str(t, mode).into_iter().map(Piece::word)),
            Segment::Concept(c) => out.push(Piece {
                text: c.clone(),
                concept: true,
            }),
        }
    }
    out
}

/// Stage 3.
pub fn lowercase_stage(pieces: Vec<Piece>, enabled: bool) -> Vec<Piece> {
    if !enabled {
        return pieces;
    }
    pieces
        .into_iter()
        .map(|p| {
            if p.concept {
                p
            } else {
                Piece::word(p.text.to_lowercase())
            }
        })
        .collect()
}

/// Stage 4.
pub fn char_filter_stage(pieces: Vec<Piece>, rules: &[FilterRule]) -> Vec<Piece> {
    if rules.is_empty() {
        return pieces;
    }
    let mut out = Vec::with_capacity(pieces.len());
    for p in pieces {
        if p.concept {
            out.push(p);
            continue;
        }
        let mut text = p.text;
        for rule in rules {
            if text.contains(rule.from.as_str()) {
                text = text.replace(rule.from.as_str(), &rule.to);
            }
        }
        out.extend(text.split_whitespace().map(Piece::word));
    }
    out
}

/// Stage 5.
pub fn stopword_stage(pieces: Vec<Piece>, stopwords: Option<&HashSet<String>>) -> Vec<Piece> {
    let Some(list) = stopwords else {
        return pieces;
    };
    pieces
        .into_iter()
        .filter(|p| p.concept || !list.contains(&p.text.to_lowercase()))
        .collect()
}

/// A configuration with its resource lists resolved, ready to run.
#[derive(Debug, Clone)]
pub struct Preprocessor {
    config: PreprocessConfig,
    filter: Arc<Vec<FilterRule>>,
    stopwords: Option<Arc<HashSet<String>>>,
}

impl Preprocessor {
    pub fn new(config: PreprocessConfig, lists: &ResourceLists) -> Result<Self, PreprocessError> {
        let filter = match config.char_filter {
            CharFilter::None => Arc::new(Vec::new()),
            name => lists.char_filter(name)?,
        };
        let stopwords = match config.stopwords {
            StopWords::None => None,
            name => Some(lists.stopwords(name)?),
        };
        Ok(Preprocessor {
            config,
            filter,
            stopwords,
        })
    }

    pub fn config(&self) -> &PreprocessConfig {
        &self.config
    }

    pub fn run(&self, sentence: &RawSentence) -> TokenSequence {
        let segments = ner_stage(sentence, self.config.ner);
        let pieces = tokenize_stage(&segments, self.config.tokenizer);
        let pieces = lowercase_stage(pieces, self.config.lowercase);
        let pieces = char_filter_stage(pieces, &self.filter);
        let pieces = stopword_stage(pieces, self.stopwords.as_deref());
        pieces.into_iter().map(|p| p.text).collect()
    }
}

/// Resolves `cfg` against `lists` and runs the pipeline on one sentence.
pub fn preprocess(
    sentence: &RawSentence,
    cfg: &PreprocessConfig,
    lists: &ResourceLists,
) -> Result<TokenSequence, PreprocessError> {
    Ok(Preprocessor::new(*cfg, lists)?.run(sentence))
}

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;
use std::sync::Arc;

use super::{CharFilter, PreprocessError, StopWords};

/// Replace every occurrence of `from` with `to` (empty `to` deletes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterRule {
    pub from: String,
    pub to: String,
}

impl FilterRule {
    pub fn delete(from: impl Into<String>) -> Self {
        FilterRule {
            from: from.into(),
            to: String::new(),
        }
    }
}

/// Parses a char-filter file. Each non-empty line is either a single character to delete
/// or a sed-style `s/FROM/TO/` replacement; the character after `s` is the delimiter,
/// so `s|/| |` replaces slashes.
pub fn parse_char_filter(text: &str, origin: &str) -> Result<Vec<FilterRule>, PreprocessError> {
    let mut rules = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.is_empty() {
            continue;
        }
        let bad = |message: &str| PreprocessError::BadResource {
            origin: origin.to_string(),
            line: idx + 1,
            message: message.to_string(),
        };
        let mut chars = line.chars();
        if line.chars().count() == 1 {
            rules.push(FilterRule::delete(line));
            continue;
        }
        if chars.next() != Some('s') {
            return Err(bad("expected a single character or an s/FROM/TO/ rule"));
        }
        let delim = chars.next().ok_or_else(|| bad("truncated rule"))?;
        let body: String = chars.collect();
        let parts: Vec<&str> = body.split(delim).collect();
        if parts.len() != 3 || !parts[2].is_empty() || parts[0].is_empty() {
            return Err(bad("malformed s/FROM/TO/ rule"));
        }
        rules.push(FilterRule {
            from: parts[0].to_string(),
            to: parts[1].to_string(),
        });
    }
    Ok(rules)
}

pub fn parse_stopwords(text: &str) -> HashSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

const BUILTIN_FILTERS: &[(CharFilter, &str)] = &[
    (
        CharFilter::Default,
        include_str!("../../resources/charfilters/default.txt"),
    ),
    (
        CharFilter::Biosses,
        include_str!("../../resources/charfilters/biosses.txt"),
    ),
    (
        CharFilter::Blagec2019,
        include_str!("../../resources/charfilters/blagec2019.txt"),
    ),
];

const BUILTIN_STOPWORDS: &[(StopWords, &str)] = &[
    (
        StopWords::Biosses,
        include_str!("../../resources/stopwords/biosses.txt"),
    ),
    (
        StopWords::Nltk2018,
        include_str!("../../resources/stopwords/nltk2018.txt"),
    ),
];

/// Named character filters and stop-word lists.
#[derive(Debug, Clone, Default)]
pub struct ResourceLists {
    char_filters: HashMap<CharFilter, Arc<Vec<FilterRule>>>,
    stopword_lists: HashMap<StopWords, Arc<HashSet<String>>>,
}

impl ResourceLists {
    /// No lists at all; every named option fails to resolve.
    pub fn empty() -> Self {
        Self::default()
    }

    /// The lists compiled into the crate from `resources/`.
    pub fn builtin() -> Self {
        let mut lists = Self::empty();
        for (name, text) in BUILTIN_FILTERS {
            let rules = parse_char_filter(text, name.name()).expect("builtin char filter parses");
            lists.char_filters.insert(*name, Arc::new(rules));
        }
        for (name, text) in BUILTIN_STOPWORDS {
            lists.stopword_lists.insert(*name, Arc::new(parse_stopwords(text)));
        }
        lists
    }

    /// Builtin lists, overridden by `dir/charfilters/<name>.txt` and
    /// `dir/stopwords/<name>.txt` where those files exist.
    pub fn with_overrides(dir: &Path) -> Result<Self, PreprocessError> {
        let mut lists = Self::builtin();
        let read = |p: &Path| {
            fs::read_to_string(p).map_err(|e| PreprocessError::BadResource {
                origin: p.display().to_string(),
                line: 0,
                message: e.to_string(),
            })
        };
        for name in CharFilter::ALL.iter().filter(|n| **n != CharFilter::None) {
            let path = dir.join("charfilters").join(format!("{}.txt", name.name()));
            if path.is_file() {
                let rules = parse_char_filter(&read(&path)?, &path.display().to_string())?;
                lists.set_char_filter(*name, rules);
            }
        }
        for name in StopWords::ALL.iter().filter(|n| **n != StopWords::None) {
            let path = dir.join("stopwords").join(format!("{}.txt", name.name()));
            if path.is_file() {
                lists.set_stopwords(*name, parse_stopwords(&read(&path)?))?;
            }
        }
        Ok(lists)
    }

    pub fn set_char_filter(&mut self, name: CharFilter, rules: Vec<FilterRule>) {
        self.char_filters.insert(name, Arc::new(rules));
    }

    pub fn set_stopwords(&mut self, name: StopWords, words: HashSet<String>) -> Result<(), PreprocessError> {
        if words.is_empty() {
            return Err(PreprocessError::BadResource {
                origin: name.name().to_string(),
                line: 0,
                message: "stop-word list is empty".into(),
            });
        }
        let words = words.into_iter().map(|w| w.to_lowercase()).collect();
        self.stopword_lists.insert(name, Arc::new(words));
        Ok(())
    }

    pub fn char_filter(&self, name: CharFilter) -> Result<Arc<Vec<FilterRule>>, PreprocessError> {
        self.char_filters
            .get(&name)
            .cloned()
            .ok_or_else(|| PreprocessError::MissingResource {
                kind: "char filter",
                name: name.name().to_string(),
            })
    }

    pub fn stopwords(&self, name: StopWords) -> Result<Arc<HashSet<String>>, PreprocessError> {
        self.stopword_lists
            .get(&name)
            .cloned()
            .ok_or_else(|| PreprocessError::MissingResource {
                kind: "stop-word list",
                name: name.name().to_string(),
            })
    }
}

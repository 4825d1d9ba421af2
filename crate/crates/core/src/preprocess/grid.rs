use std::str::FromStr;

use super::{parse_bool, CharFilter, NerMode, PreprocessConfig, PreprocessError, StopWords, TokenizerMode};

/// Value lists for each pre-processing dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridDimensions {
    pub ner: Vec<NerMode>,
    pub tokenizer: Vec<TokenizerMode>,
    pub lowercase: Vec<bool>,
    pub char_filter: Vec<CharFilter>,
    pub stopwords: Vec<StopWords>,
}

impl Default for GridDimensions {
    /// One value per dimension, taken from [`PreprocessConfig::default`].
    fn default() -> Self {
        let d = PreprocessConfig::default();
        GridDimensions {
            ner: vec![d.ner],
            tokenizer: vec![d.tokenizer],
            lowercase: vec![d.lowercase],
            char_filter: vec![d.char_filter],
            stopwords: vec![d.stopwords],
        }
    }
}

impl GridDimensions {
    /// Every tokenizer, casing, filter and stop-word option, without NER (48 configurations).
    pub fn full() -> Self {
        GridDimensions {
            ner: vec![NerMode::None],
            tokenizer: TokenizerMode::ALL.to_vec(),
            lowercase: vec![true, false],
            char_filter: CharFilter::ALL.to_vec(),
            stopwords: StopWords::ALL.to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.ner.len() * self.tokenizer.len() * self.lowercase.len() * self.char_filter.len() * self.stopwords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Parses `full`, or `;`-separated `key=v1|v2|...` items; absent keys keep the single
/// default value. `full` may be followed by overrides, e.g. `full;ner=annotations`.
impl FromStr for GridDimensions {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        fn values<T: FromStr<Err = String>>(v: &str) -> Result<Vec<T>, String> {
            v.split('|')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(str::parse)
                .collect()
        }
        let mut dims = GridDimensions::default();
        for item in s.split(';').map(str::trim).filter(|i| !i.is_empty()) {
            if item == "full" {
                dims = GridDimensions::full();
                continue;
            }
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| format!("expected key=v1|v2, found `{item}`"))?;
            match k.trim() {
                "ner" => dims.ner = values(v)?,
                "tokenizer" | "tok" => dims.tokenizer = values(v)?,
                "lowercase" | "lc" => {
                    dims.lowercase = v
                        .split('|')
                        .map(str::trim)
                        .filter(|x| !x.is_empty())
                        .map(parse_bool)
                        .collect::<Result<_, _>>()?
                }
                "char-filter" | "char_filter" | "cf" => dims.char_filter = values(v)?,
                "stopwords" | "sw" => dims.stopwords = values(v)?,
                other => return Err(format!("unknown grid dimension `{other}`")),
            }
        }
        Ok(dims)
    }
}

/// Cartesian product of the dimension lists, NER outermost and stop words innermost,
/// each dimension in the order given.
pub fn config_grid(dims: &GridDimensions) -> Result<Vec<PreprocessConfig>, PreprocessError> {
    let checks: [(&'static str, bool); 5] = [
        ("ner", dims.ner.is_empty()),
        ("tokenizer", dims.tokenizer.is_empty()),
        ("lowercase", dims.lowercase.is_empty()),
        ("char-filter", dims.char_filter.is_empty()),
        ("stopwords", dims.stopwords.is_empty()),
    ];
    if let Some((name, _)) = checks.iter().find(|(_, empty)| *empty) {
        return Err(PreprocessError::EmptyDimension(name));
    }
    let mut out = Vec::with_capacity(dims.len());
    for &ner in &dims.ner {
        for &tokenizer in &dims.tokenizer {
            for &lowercase in &dims.lowercase {
                for &char_filter in &dims.char_filter {
                    for &stopwords in &dims.stopwords {
                        out.push(PreprocessConfig {
                            ner,
                            tokenizer,
                            lowercase,
                            char_filter,
                            stopwords,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowercase_dimension_only() {
        let dims = GridDimensions {
            lowercase: vec![true, false],
            ..GridDimensions::default()
        };
        let grid = config_grid(&dims).unwrap();
        assert_eq!(grid.len(), 2);
        assert!(grid[0].lowercase && !grid[1].lowercase);
    }

    #[test]
    fn full_grid_has_48_distinct_configs() {
        let grid = config_grid(&GridDimensions::full()).unwrap();
        assert_eq!(grid.len(), 48);
        let distinct: std::collections::HashSet<_> = grid.iter().collect();
        assert_eq!(distinct.len(), 48);
        // innermost dimension varies fastest
        assert_eq!(grid[0].stopwords, StopWords::None);
        assert_eq!(grid[1].stopwords, StopWords::Biosses);
        assert_eq!(grid[0].tokenizer, grid[23].tokenizer);
        assert_ne!(grid[0].tokenizer, grid[24].tokenizer);
    }

    #[test]
    fn empty_dimension_is_rejected() {
        let dims = GridDimensions {
            tokenizer: vec![],
            ..GridDimensions::full()
        };
        assert!(matches!(
            config_grid(&dims),
            Err(PreprocessError::EmptyDimension("tokenizer"))
        ));
    }

    #[test]
    fn parses_grid_strings() {
        assert_eq!("full".parse::<GridDimensions>().unwrap(), GridDimensions::full());
        let d: GridDimensions = "tokenizer=whitespace|treebank;lowercase=yes|no".parse().unwrap();
        assert_eq!(d.len(), 4);
        let d: GridDimensions = "full;ner=annotations".parse().unwrap();
        assert_eq!(d.ner, vec![NerMode::Annotations]);
        assert!("colour=red".parse::<GridDimensions>().is_err());
    }
}

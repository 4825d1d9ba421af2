//! Sentence similarity from pre-trained word vectors (SWEM-style pooling plus cosine).
//!
//! Vector files are plain text: an optional `count dim` header line, then one
//! `token v1 ... vd` row per word. Out-of-vocabulary tokens are skipped when pooling.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::data::TokenSequence;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VectorError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vector file has no rows")]
    Empty,
    #[error("expected dimension {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("unknown pooling mode `{0}`")]
    UnknownPooling(String),
}

/// Immutable word-vector table with a shared dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorModel {
    dim: usize,
    index: HashMap<String, usize>,
    tokens: Vec<String>,
    data: Vec<f32>,
}

impl VectorModel {
    /// Builds a model from `(token, vector)` rows. Later duplicates are ignored.
    pub fn from_rows<I>(rows: I) -> Result<Self, VectorError>
    where
        I: IntoIterator<Item = (String, Vec<f32>)>,
    {
        let mut model: Option<VectorModel> = None;
        for (line, (token, v)) in rows.into_iter().enumerate() {
            let m = model.get_or_insert_with(|| VectorModel::empty(v.len()));
            m.push(token, &v, line + 1)?;
        }
        model.filter(|m| m.dim > 0).ok_or(VectorError::Empty)
    }

    fn empty(dim: usize) -> Self {
        VectorModel {
            dim,
            index: HashMap::new(),
            tokens: Vec::new(),
            data: Vec::new(),
        }
    }

    fn push(&mut self, token: String, v: &[f32], line: usize) -> Result<(), VectorError> {
        if v.len() != self.dim {
            return Err(VectorError::Parse {
                line,
                message: format!("expected {} components, found {}", self.dim, v.len()),
            });
        }
        if let Some(bad) = v.iter().find(|x| !x.is_finite()) {
            return Err(VectorError::Parse {
                line,
                message: format!("non-finite component {bad}"),
            });
        }
        if self.index.contains_key(&token) {
            log::warn!("line {line}: duplicate token `{token}` ignored");
            return Ok(());
        }
        self.index.insert(token.clone(), self.tokens.len());
        self.tokens.push(token);
        self.data.extend_from_slice(v);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn get(&self, token: &str) -> Option<&[f32]> {
        let i = *self.index.get(token)?;
        Some(&self.data[i * self.dim..(i + 1) * self.dim])
    }

    /// Rows in load order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &[f32])> {
        self.tokens
            .iter()
            .zip(self.data.chunks_exact(self.dim))
            .map(|(t, v)| (t.as_str(), v))
    }

    /// Multiplies every component by `k`.
    pub fn scaled(&self, k: f32) -> Self {
        let mut m = self.clone();
        m.data.iter_mut().for_each(|x| *x *= k);
        m
    }

    pub fn parse(text: &str, expected_dim: Option<usize>) -> Result<Self, VectorError> {
        let mut model: Option<VectorModel> = None;
        let mut declared_count = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let fields: Vec<&str> = raw.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            if model.is_none() && declared_count.is_none() && fields.len() == 2 {
                if let (Ok(count), Ok(dim)) = (fields[0].parse::<usize>(), fields[1].parse::<usize>()) {
                    if let Some(exp) = expected_dim.filter(|&e| e != dim) {
                        return Err(VectorError::Dimension {
                            expected: exp,
                            found: dim,
                        });
                    }
                    declared_count = Some(count);
                    model = Some(VectorModel::empty(dim));
                    continue;
                }
            }
            let values = fields[1..]
                .iter()
                .map(|f| f.parse::<f32>())
                .collect::<Result<Vec<f32>, _>>()
                .map_err(|e| VectorError::Parse {
                    line,
                    message: e.to_string(),
                })?;
            if model.is_none() {
                if let Some(exp) = expected_dim.filter(|&e| e != values.len()) {
                    return Err(VectorError::Dimension {
                        expected: exp,
                        found: values.len(),
                    });
                }
            }
            let m = model.get_or_insert_with(|| VectorModel::empty(values.len()));
            m.push(fields[0].to_string(), &values, line)?;
        }
        let model = model.ok_or(VectorError::Empty)?;
        if model.dim == 0 {
            return Err(VectorError::Parse {
                line: 1,
                message: "vectors have no components".into(),
            });
        }
        if let Some(count) = declared_count.filter(|&c| c != model.len()) {
            log::warn!("header declares {count} vectors, file holds {}", model.len());
        }
        if model.is_empty() {
            return Err(VectorError::Empty);
        }
        Ok(model)
    }

    /// Writes the model with a `count dim` header in shortest round-trip notation.
    pub fn write(&self, path: impl AsRef<Path>) -> Result<(), VectorError> {
        let path = path.as_ref();
        let io = |e: std::io::Error| VectorError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        };
        let mut out = std::io::BufWriter::new(fs::File::create(path).map_err(io)?);
        writeln!(out, "{} {}", self.len(), self.dim).map_err(io)?;
        for (t, v) in self.iter() {
            write!(out, "{t}").map_err(io)?;
            for x in v {
                write!(out, " {x}").map_err(io)?;
            }
            writeln!(out).map_err(io)?;
        }
        out.flush().map_err(io)
    }
}

pub fn load_vectors(path: impl AsRef<Path>, expected_dim: Option<usize>) -> Result<VectorModel, VectorError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| VectorError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    VectorModel::parse(&text, expected_dim)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pooling {
    Mean,
    Min,
    Max,
    Sum,
}

impl Pooling {
    pub const ALL: [Pooling; 4] = [Pooling::Mean, Pooling::Min, Pooling::Max, Pooling::Sum];

    pub fn name(self) -> &'static str {
        match self {
            Pooling::Mean => "mean",
            Pooling::Min => "min",
            Pooling::Max => "max",
            Pooling::Sum => "sum",
        }
    }
}

impl fmt::Display for Pooling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pooling {
    type Err = VectorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pooling::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| VectorError::UnknownPooling(s.to_string()))
    }
}

/// Component-wise pooling over in-vocabulary tokens, accumulated in `f64`.
/// Returns `None` when no token has a vector.
pub fn pool(s: &TokenSequence, model: &VectorModel, mode: Pooling) -> Option<Vec<f64>> {
    let mut acc: Option<Vec<f64>> = None;
    let mut n = 0usize;
    for v in s.iter().filter_map(|t| model.get(t)) {
        n += 1;
        match acc.as_mut() {
            None => acc = Some(v.iter().map(|&x| x as f64).collect()),
            Some(a) => {
                for (a, &x) in a.iter_mut().zip(v) {
                    let x = x as f64;
                    *a = match mode {
                        Pooling::Mean | Pooling::Sum => *a + x,
                        Pooling::Min => a.min(x),
                        Pooling::Max => a.max(x),
                    };
                }
            }
        }
    }
    if mode == Pooling::Mean {
        if let Some(a) = acc.as_mut() {
            a.iter_mut().for_each(|x| *x /= n as f64);
        }
    }
    acc
}

/// Cosine of the two pooled vectors in `[-1, 1]`; 0 when either pool is missing or zero.
pub fn swem_sim(s1: &TokenSequence, s2: &TokenSequence, model: &VectorModel, mode: Pooling) -> f64 {
    let (Some(a), Some(b)) = (pool(s1, model, mode), pool(s2, model, mode)) else {
        return 0.0;
    };
    let (mut dot, mut na, mut nb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(&b) {
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    crate::strsim::cosine_from_parts(dot, na, nb).clamp(-1.0, 1.0)
}

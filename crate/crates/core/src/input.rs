//! Model files and class literals for the command line.
//!
//! A model file is JSON:
//! `{"type": "hilb", "n": 2, "surface_gram": [[10]], "labels": ["f"], "g": [1], "ambient_unimodular": true}`.
//! A class literal is a signed sum of `[coefficient][*]label` terms such as
//! `2f-3d` or `(1/2)delta_v`; `d` names the `δ`/`e` slot of the lattice.

use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::lattice::{ClassVector, QuadLattice};
use crate::model::{build_model, DeformationType, HKModel, ModelError};
use crate::{Int, Rat, RatMatrix};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown model type `{0}` (expected hilb, kummer or k3)")]
    UnknownType(String),
    #[error("model type `{0}` needs \"n\"")]
    MissingN(String),
    #[error("bad class literal `{literal}`: {reason}")]
    BadLiteral { literal: String, reason: String },
    #[error("bad integer list `{0}`")]
    BadList(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default)]
    pub n: Option<u32>,
    pub surface_gram: Vec<Vec<i64>>,
    pub labels: Vec<String>,
    pub g: Vec<i64>,
    #[serde(default)]
    pub ambient_unimodular: bool,
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn dtype(&self) -> Result<DeformationType, InputError> {
        let n = || self.n.ok_or_else(|| InputError::MissingN(self.kind.clone()));
        Ok(match self.kind.as_str() {
            "hilb" => DeformationType::hilb(n()?)?,
            "kummer" => DeformationType::kummer(n()?)?,
            "k3" => DeformationType::K3Surface,
            other => return Err(InputError::UnknownType(other.to_string())),
        })
    }

    pub fn build(&self) -> Result<HKModel, InputError> {
        let gram = int_matrix(&self.surface_gram);
        let g: Vec<Int> = self.g.iter().map(|&x| Int::from(x)).collect();
        Ok(build_model(self.dtype()?, &gram, &self.labels, &g, self.ambient_unimodular)?)
    }
}

pub fn load_model(path: &Path) -> Result<HKModel, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })?;
    ModelFile::from_json(&text)?.build()
}

/// Square integer matrix from JSON rows; ragged input is rejected later by the
/// lattice constructor.
pub fn int_matrix(rows: &[Vec<i64>]) -> RatMatrix {
    let cols = rows.first().map_or(0, Vec::len);
    let data = rows
        .iter()
        .map(|r| (0..cols).map(|j| Rat::from_integer(r.get(j).copied().unwrap_or(0).into())).collect())
        .collect();
    crate::linalg::Matrix::from_rows(data, cols)
}

/// Parses `"[[4,1],[1,-2]]"`.
pub fn parse_gram(text: &str) -> Result<Vec<Vec<i64>>, InputError> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(text)?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(InputError::BadList(text.to_string()));
    }
    Ok(rows)
}

/// Parses `"1,-2,3"`.
pub fn parse_int_list(text: &str) -> Result<Vec<Int>, InputError> {
    text.split(',')
        .map(|t| t.trim().parse::<Int>().map_err(|_| InputError::BadList(text.to_string())))
        .collect()
}

/// Parses a class literal on `lattice`; `slot` is the label that `d` stands for.
pub fn parse_class(lattice: &Arc<QuadLattice>, text: &str, slot: Option<&str>) -> Result<ClassVector, InputError> {
    let bad = |reason: &str| InputError::BadLiteral {
        literal: text.to_string(),
        reason: reason.to_string(),
    };
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad("empty"));
    }
    let mut coords = vec![Rat::from_integer(0.into()); lattice.rank()];
    if s == "0" {
        return Ok(ClassVector::new(lattice, coords).expect("rank matches"));
    }
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let mut sign = Rat::from_integer(1.into());
        if chars[i] == '+' || chars[i] == '-' {
            if chars[i] == '-' {
                sign = -sign;
            }
            i += 1;
        } else if i > 0 {
            return Err(bad("terms must be separated by + or -"));
        }
        let coef = if i < chars.len() && chars[i] == '(' {
            let close = chars[i..].iter().position(|&c| c == ')').ok_or_else(|| bad("unclosed parenthesis"))? + i;
            let inner: String = chars[i + 1..close].iter().collect();
            i = close + 1;
            parse_rat(&inner).ok_or_else(|| bad("bad fraction"))?
        } else {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                Rat::from_integer(1.into())
            } else {
                let digits: String = chars[start..i].iter().collect();
                Rat::from_integer(digits.parse::<Int>().map_err(|_| bad("bad integer"))?)
            }
        };
        if i < chars.len() && chars[i] == '*' {
            i += 1;
        }
        let start = i;
        while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
            i += 1;
        }
        if start == i {
            return Err(bad("missing label"));
        }
        let mut label: String = chars[start..i].iter().collect();
        if label == "d" && lattice.label_index("d").is_none() {
            label = slot.ok_or_else(|| bad("`d` needs a lattice with a delta or e slot"))?.to_string();
        }
        let idx = lattice
            .label_index(&label)
            .ok_or_else(|| bad(&format!("unknown label `{label}` (have {})", lattice.labels().join(", "))))?;
        coords[idx] += sign * coef;
    }
    Ok(ClassVector::new(lattice, coords).expect("rank matches"))
}

pub fn parse_rat(text: &str) -> Option<Rat> {
    match text.split_once('/') {
        Some((p, q)) => {
            let q: Int = q.trim().parse().ok()?;
            if q == Int::from(0) {
                return None;
            }
            Some(Rat::new(p.trim().parse().ok()?, q))
        }
        None => Some(Rat::from_integer(text.trim().parse().ok()?)),
    }
}

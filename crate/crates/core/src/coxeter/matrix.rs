//! Coxeter matrices and the JSON group file format.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{CoxError, Result};

/// Entry `m_st` of a Coxeter matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bond {
    Finite(u32),
    Infinite,
}

impl Bond {
    pub fn finite(self) -> Option<u32> {
        match self {
            Bond::Finite(m) => Some(m),
            Bond::Infinite => None,
        }
    }

    /// `m_st = 2`.
    pub fn commutes(self) -> bool {
        self == Bond::Finite(2)
    }

    /// `m_st >= k`, with infinity above every integer.
    pub fn at_least(self, k: u32) -> bool {
        match self {
            Bond::Finite(m) => m >= k,
            Bond::Infinite => true,
        }
    }

    fn to_json(self) -> Value {
        match self {
            Bond::Finite(m) => json!(m),
            Bond::Infinite => json!("inf"),
        }
    }
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bond::Finite(m) => write!(f, "{m}"),
            Bond::Infinite => write!(f, "inf"),
        }
    }
}

/// A validated symmetric Coxeter matrix with named generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    name: String,
    generators: Vec<String>,
    m: Vec<Vec<Bond>>,
}

pub const MAX_RANK: usize = 64;

impl CoxeterMatrix {
    pub fn new(name: impl Into<String>, generators: Vec<String>, m: Vec<Vec<Bond>>) -> Result<Self> {
        let n = generators.len();
        if n == 0 {
            return Err(CoxError::InvalidMatrix("no generators".into()));
        }
        if n > MAX_RANK {
            return Err(CoxError::InvalidMatrix(format!(
                "rank {n} exceeds the supported maximum {MAX_RANK}"
            )));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.is_empty() || g.contains(|c: char| c == ',' || c.is_whitespace()) {
                return Err(CoxError::InvalidMatrix(format!("bad generator name `{g}`")));
            }
            if generators[..i].contains(g) {
                return Err(CoxError::InvalidMatrix(format!("duplicate generator `{g}`")));
            }
        }
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(CoxError::InvalidMatrix(format!("matrix must be {n}x{n}")));
        }
        for i in 0..n {
            if m[i][i] != Bond::Finite(1) {
                return Err(CoxError::InvalidMatrix(format!(
                    "diagonal entry for `{}` must be 1",
                    generators[i]
                )));
            }
            for j in 0..n {
                if m[i][j] != m[j][i] {
                    return Err(CoxError::InvalidMatrix(format!(
                        "matrix is not symmetric at ({}, {})",
                        generators[i], generators[j]
                    )));
                }
                if i != j && !m[i][j].at_least(2) {
                    return Err(CoxError::InvalidMatrix(format!(
                        "off-diagonal entry ({}, {}) must be at least 2",
                        generators[i], generators[j]
                    )));
                }
            }
        }
        Ok(CoxeterMatrix {
            name: name.into(),
            generators,
            m,
        })
    }

    /// Parses the JSON group document
    /// `{"name": .., "generators": [..], "matrix": [[..], ..]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text)?;
        Self::from_value(&doc)
    }

    pub fn from_value(doc: &Value) -> Result<Self> {
        let obj = doc
            .as_object()
            .ok_or_else(|| CoxError::Parse("document must be a JSON object".into()))?;
        let name = obj
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| CoxError::Parse("missing string field `name`".into()))?;
        let generators = obj
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| CoxError::Parse("missing array field `generators`".into()))?
            .iter()
            .map(|g| {
                g.as_str()
                    .map(str::to_owned)
                    .ok_or_else(|| CoxError::Parse("generator names must be strings".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let rows = obj
            .get("matrix")
            .and_then(Value::as_array)
            .ok_or_else(|| CoxError::Parse("missing array field `matrix`".into()))?;
        let m = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| CoxError::Parse("matrix rows must be arrays".into()))?
                    .iter()
                    .map(parse_entry)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, generators, m)
    }

    pub fn to_value(&self) -> Value {
        json!({
            "name": self.name,
            "generators": self.generators,
            "matrix": self.m.iter()
                .map(|row| row.iter().map(|b| b.to_json()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn bond(&self, i: usize, j: usize) -> Bond {
        self.m[i][j]
    }

    /// Distinct finite labels off the diagonal.
    pub fn finite_labels(&self) -> Vec<u64> {
        let mut labels: Vec<u64> = (0..self.rank())
            .flat_map(|i| (i + 1..self.rank()).map(move |j| (i, j)))
            .filter_map(|(i, j)| self.m[i][j].finite().map(u64::from))
            .collect();
        labels.sort_unstable();
        labels.dedup();
        labels
    }

    /// Whether every pair of distinct generators has `m_st >= 3`.
    pub fn has_no_commuting_pairs(&self) -> bool {
        (0..self.rank()).all(|i| (0..self.rank()).all(|j| i == j || self.m[i][j].at_least(3)))
    }
}

fn parse_entry(v: &Value) -> Result<Bond> {
    if let Some(k) = v.as_u64() {
        let k = u32::try_from(k).map_err(|_| CoxError::Parse(format!("bond label {k} too large")))?;
        return Ok(Bond::Finite(k));
    }
    match v.as_str() {
        Some("inf") => Ok(Bond::Infinite),
        Some(other) => Err(CoxError::Parse(format!("unknown matrix token `{other}`"))),
        None => Err(CoxError::Parse(format!("matrix entry `{v}` is not a positive integer or \"inf\""))),
    }
}

//! Complex file formats.
//!
//! Facet lists: one facet per line as whitespace-separated vertex labels,
//! `#` starts a comment, and an optional `m <count>` header fixes the vertex
//! count (otherwise the largest label seen). `m 0` with no facets is `{∅}`.
//!
//! JSON: `{"m": <int>, "facets": [[<int>, ...], ...]}`.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid JSON complex: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub m: u32,
    pub facets: Vec<Vec<i64>>,
}

impl ComplexFile {
    pub fn build(&self) -> Result<SimplicialComplex, ComplexError> {
        SimplicialComplex::new(self.m, &self.facets)
    }

    /// Facets of `k` relabelled onto `1..=m` when its vertex set has gaps.
    pub fn from_complex(k: &SimplicialComplex) -> ComplexFile {
        let k = if k.max_label() as usize == k.num_vertices() {
            k.clone()
        } else {
            k.relabeled(0)
                .expect("relabelling never grows the vertex count")
        };
        ComplexFile {
            m: k.num_vertices() as u32,
            facets: k
                .facet_lists()
                .into_iter()
                .map(|f| f.into_iter().map(i64::from).collect())
                .collect(),
        }
    }
}

pub fn parse_facet_text(text: &str) -> Result<SimplicialComplex, ParseError> {
    let mut declared: Option<u32> = None;
    let mut facets: Vec<Vec<i64>> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix('m') {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                if declared.is_some() || !facets.is_empty() {
                    return Err(ParseError::Syntax {
                        line,
                        msg: "the `m` header must come first and only once".into(),
                    });
                }
                let count = rest.trim().parse::<u32>().map_err(|_| ParseError::Syntax {
                    line,
                    msg: format!("bad vertex count {:?}", rest.trim()),
                })?;
                declared = Some(count);
                continue;
            }
        }
        let facet = body
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>().map_err(|_| ParseError::Syntax {
                    line,
                    msg: format!("expected a vertex label, found {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        facets.push(facet);
    }
    let m = match declared {
        Some(m) => m,
        None => {
            let top = facets.iter().flatten().copied().max().unwrap_or(0);
            u32::try_from(top.max(0)).map_err(|_| ComplexError::TooManyVertices(top as u64))?
        }
    };
    if facets.is_empty() && declared == Some(0) {
        facets.push(Vec::new());
    }
    Ok(SimplicialComplex::new(m, &facets)?)
}

pub fn to_facet_text(k: &SimplicialComplex) -> String {
    let file = ComplexFile::from_complex(k);
    let mut out = format!("m {}\n", file.m);
    for f in &file.facets {
        if f.is_empty() {
            continue;
        }
        let line: Vec<String> = f.iter().map(i64::to_string).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

pub fn parse_json(text: &str) -> Result<SimplicialComplex, ParseError> {
    let file: ComplexFile = serde_json::from_str(text)?;
    Ok(file.build()?)
}

pub fn to_json(k: &SimplicialComplex) -> String {
    serde_json::to_string(&ComplexFile::from_complex(k)).expect("plain data serializes")
}

/// Parses either format; JSON is recognized by a leading `{`.
pub fn parse_any(text: &str) -> Result<SimplicialComplex, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_facet_text(text)
    }
}

pub fn load(path: &Path) -> Result<SimplicialComplex, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_any(&text)
}

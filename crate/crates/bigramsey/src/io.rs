//! On-disk formats: plain-text structure files and JSON catalogs.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::Catalog;
use crate::hyper::Hypergraph3;
use crate::sauer::Graph;
use crate::shape::{CanonicalCode, Family};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("catalog is inconsistent: {0}")]
    BadCatalog(String),
}

fn parse_err(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse { line, message: message.into() }
}

/// A parsed structure file: a header `graph n` or `hypergraph3 n` followed
/// by one edge or triple per line as space-separated 0-based indices.
#[derive(Debug, Clone)]
pub enum StructureFile {
    Graph(Graph),
    Hyper(Hypergraph3),
}

impl StructureFile {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (header_line, header) = lines
            .next()
            .ok_or_else(|| parse_err(0, "empty structure file"))?;
        let mut parts = header.split_whitespace();
        let kind = parts.next().unwrap_or_default();
        let n: usize = parts
            .next()
            .ok_or_else(|| parse_err(header_line, "missing vertex count"))?
            .parse()
            .map_err(|_| parse_err(header_line, "vertex count is not a number"))?;
        if parts.next().is_some() {
            return Err(parse_err(header_line, "trailing tokens after header"));
        }
        if n == 0 {
            return Err(parse_err(header_line, "vertex count must be positive"));
        }
        let arity = match kind {
            "graph" => 2,
            "hypergraph3" => 3,
            other => {
                return Err(parse_err(
                    header_line,
                    format!("unknown structure kind `{other}`"),
                ))
            }
        };
        let mut tuples: Vec<Vec<usize>> = Vec::new();
        for (lineno, line) in lines {
            let tuple: Vec<usize> = line
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| parse_err(lineno, format!("`{t}` is not a vertex index")))
                })
                .collect::<Result<_, _>>()?;
            if tuple.len() != arity {
                return Err(parse_err(lineno, format!("expected {arity} indices")));
            }
            let mut sorted = tuple.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != arity {
                return Err(parse_err(lineno, "repeated vertex in tuple"));
            }
            if sorted[arity - 1] >= n {
                return Err(parse_err(lineno, "vertex index out of range"));
            }
            if tuples.iter().any(|t| {
                let mut s = t.clone();
                s.sort_unstable();
                s == sorted
            }) {
                return Err(parse_err(lineno, "duplicate tuple"));
            }
            tuples.push(tuple);
        }
        Ok(if arity == 2 {
            StructureFile::Graph(
                Graph::new(n, tuples.into_iter().map(|t| (t[0], t[1])))
                    .expect("validated above"),
            )
        } else {
            StructureFile::Hyper(
                Hypergraph3::new(n, tuples.into_iter().map(|t| [t[0], t[1], t[2]]))
                    .expect("validated above"),
            )
        })
    }

    pub fn load(path: &Path) -> Result<Self, IoError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

/// JSON representation of a [`Catalog`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogFile {
    pub family: String,
    pub parameters: String,
    /// Decimal string, to keep large counts exact and readable.
    pub count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shapes: Option<Vec<String>>,
    pub tool_version: String,
    pub settings: BTreeMap<String, String>,
}

impl CatalogFile {
    pub fn from_catalog(catalog: &Catalog, settings: BTreeMap<String, String>) -> Self {
        CatalogFile {
            family: catalog.family.name().to_string(),
            parameters: catalog.parameter.clone(),
            count: catalog.count.to_string(),
            shapes: catalog
                .codes
                .as_ref()
                .map(|codes| codes.iter().map(|c| c.to_hex()).collect()),
            tool_version: TOOL_VERSION.to_string(),
            settings,
        }
    }

    pub fn to_catalog(&self) -> Result<Catalog, IoError> {
        let family = Family::from_str(&self.family)
            .map_err(IoError::BadCatalog)?;
        let count = BigUint::from_str(&self.count)
            .map_err(|_| IoError::BadCatalog("count is not a decimal integer".into()))?;
        match &self.shapes {
            None => Ok(Catalog::count_only(family, self.parameters.clone(), count)),
            Some(shapes) => {
                if BigUint::from(shapes.len()) != count {
                    return Err(IoError::BadCatalog(
                        "count does not match the number of shapes".into(),
                    ));
                }
                let mut codes = Vec::with_capacity(shapes.len());
                for s in shapes {
                    let code = CanonicalCode::from_hex(s)
                        .map_err(|_| IoError::BadCatalog(format!("bad shape code `{s}`")))?;
                    if code.family().ok() != Some(family) {
                        return Err(IoError::BadCatalog(format!(
                            "shape code `{s}` belongs to a different family"
                        )));
                    }
                    codes.push(code);
                }
                codes.sort_unstable();
                codes.dedup();
                if BigUint::from(codes.len()) != count {
                    return Err(IoError::BadCatalog("duplicate shape codes".into()));
                }
                Ok(Catalog::with_codes(family, self.parameters.clone(), codes))
            }
        }
    }

    pub fn save(&self, path: &Path) -> Result<(), IoError> {
        let json = serde_json::to_string_pretty(self)?;
        std::fs::write(path, json + "\n")?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, IoError> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{Mode, DEFAULT_CAP};
    use crate::devlin::enumerate_devlin;

    #[test]
    fn parses_a_graph_file() {
        let f = StructureFile::parse("graph 3\n0 1\n1 2\n").unwrap();
        match f {
            StructureFile::Graph(g) => {
                assert_eq!(g.n, 3);
                assert!(g.has_edge(0, 1) && g.has_edge(2, 1) && !g.has_edge(0, 2));
            }
            _ => panic!("expected a graph"),
        }
    }

    #[test]
    fn parses_a_hypergraph_file_with_comments() {
        let f = StructureFile::parse("# demo\nhypergraph3 4\n0 1 2\n1 2 3\n").unwrap();
        match f {
            StructureFile::Hyper(h) => {
                assert_eq!(h.n, 4);
                assert!(h.has_triple(2, 1, 0));
            }
            _ => panic!("expected a hypergraph"),
        }
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(StructureFile::parse("").is_err());
        assert!(StructureFile::parse("graph\n").is_err());
        assert!(StructureFile::parse("digraph 3\n").is_err());
        assert!(StructureFile::parse("graph 3\n0 3\n").is_err());
        assert!(StructureFile::parse("graph 3\n0 0\n").is_err());
        assert!(StructureFile::parse("graph 3\n0 1\n1 0\n").is_err());
        assert!(StructureFile::parse("hypergraph3 3\n0 1\n").is_err());
    }

    #[test]
    fn catalog_round_trip() {
        let catalog = enumerate_devlin(3, Mode::Full, DEFAULT_CAP).unwrap();
        let file = CatalogFile::from_catalog(&catalog, BTreeMap::new());
        let json = serde_json::to_string(&file).unwrap();
        let reread: CatalogFile = serde_json::from_str(&json).unwrap();
        let back = reread.to_catalog().unwrap();
        assert_eq!(back.count, catalog.count);
        assert_eq!(back.codes, catalog.codes);
    }

    #[test]
    fn catalog_count_mismatch_is_rejected() {
        let catalog = enumerate_devlin(2, Mode::Full, DEFAULT_CAP).unwrap();
        let mut file = CatalogFile::from_catalog(&catalog, BTreeMap::new());
        file.count = "3".into();
        assert!(file.to_catalog().is_err());
    }
}

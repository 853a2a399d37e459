//! Plain-text edge-list format.
//!
//! ```text
//! # n=<n> model=<name> seed=<seed>
//! # <optional further comment lines, kept verbatim>
//! v <id> <type>
//! ...
//! e <id1> <id2>
//! ...
//! ```
//!
//! Vertex lines appear in id order, one per vertex. Writing a parsed file
//! reproduces it byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{TypedGraph, VertexType};

/// Model name whose output is a multigraph.
const MULTIGRAPH_MODEL: &str = "cm";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeListHeader {
    pub model: String,
    pub seed: u64,
    /// Additional `#` lines following the header line, without the leading `# `.
    pub comments: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeListFile {
    pub header: EdgeListHeader,
    pub graph: TypedGraph,
}

impl EdgeListFile {
    pub fn new(graph: TypedGraph, model: impl Into<String>, seed: u64) -> Self {
        EdgeListFile {
            header: EdgeListHeader {
                model: model.into(),
                seed,
                comments: Vec::new(),
            },
            graph,
        }
    }

    pub fn with_comment(mut self, comment: impl Into<String>) -> Self {
        self.header.comments.push(comment.into());
        self
    }

    pub fn to_text(&self) -> String {
        let g = &self.graph;
        let mut out = String::with_capacity(16 * (g.n() + g.edge_count()) + 64);
        let _ = writeln!(
            out,
            "# n={} model={} seed={}",
            g.n(),
            self.header.model,
            self.header.seed
        );
        for c in &self.header.comments {
            let _ = writeln!(out, "# {c}");
        }
        for (id, t) in g.types().iter().enumerate() {
            let _ = writeln!(out, "v {id} {t}");
        }
        for &(u, v) in g.edges() {
            let _ = writeln!(out, "e {u} {v}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, first) = lines.next().ok_or_else(|| perr(1, "empty file"))?;
        let (n, model, seed) = parse_header(first)?;

        let mut comments = Vec::new();
        let mut types = Vec::with_capacity(n);
        let mut edges = Vec::new();
        for (lineno, line) in lines {
            if let Some(rest) = line.strip_prefix('#') {
                if !types.is_empty() || !edges.is_empty() {
                    return Err(perr(lineno, "comment lines must precede vertex lines"));
                }
                comments.push(rest.strip_prefix(' ').unwrap_or(rest).to_string());
                continue;
            }
            let mut fields = line.split(' ');
            match fields.next() {
                Some("v") => {
                    if !edges.is_empty() {
                        return Err(perr(lineno, "vertex line after edge lines"));
                    }
                    let id: usize = parse_field(fields.next(), lineno, "vertex id")?;
                    if id != types.len() {
                        return Err(perr(lineno, format!("expected vertex id {}, found {id}", types.len())));
                    }
                    let label: u8 = parse_field(fields.next(), lineno, "vertex type")?;
                    let t = VertexType::from_label(label)
                        .ok_or_else(|| perr(lineno, format!("vertex type must be 1 or 2, found {label}")))?;
                    types.push(t);
                }
                Some("e") => {
                    let u: u32 = parse_field(fields.next(), lineno, "edge endpoint")?;
                    let v: u32 = parse_field(fields.next(), lineno, "edge endpoint")?;
                    if u as usize >= n || v as usize >= n {
                        return Err(perr(
                            lineno,
                            format!("edge ({u}, {v}) references a vertex outside 0..{n}"),
                        ));
                    }
                    edges.push((u, v));
                }
                _ => return Err(perr(lineno, format!("unrecognized line `{line}`"))),
            }
            if fields.next().is_some() {
                return Err(perr(lineno, "trailing fields"));
            }
        }
        if types.len() != n {
            return Err(perr(
                text.lines().count(),
                format!("header declares n={n} but {} vertex lines found", types.len()),
            ));
        }
        let multigraph = model == MULTIGRAPH_MODEL;
        Ok(EdgeListFile {
            header: EdgeListHeader { model, seed, comments },
            graph: TypedGraph::new(types, edges, multigraph)?,
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, line: usize, what: &str) -> Result<T> {
    let s = field.ok_or_else(|| perr(line, format!("missing {what}")))?;
    s.parse().map_err(|_| perr(line, format!("invalid {what} `{s}`")))
}

fn parse_header(line: &str) -> Result<(usize, String, u64)> {
    let body = line
        .strip_prefix("# ")
        .ok_or_else(|| perr(1, "header must start with `# n=`"))?;
    let mut parts = body.split(' ');
    let mut take = |key: &str| -> Result<&str> {
        parts
            .next()
            .and_then(|p| p.strip_prefix(key))
            .and_then(|p| p.strip_prefix('='))
            .ok_or_else(|| perr(1, format!("header is missing `{key}=`")))
    };
    let n = take("n")?;
    let model = take("model")?.to_string();
    let seed = take("seed")?;
    let n = n.parse().map_err(|_| perr(1, format!("invalid n `{n}`")))?;
    let seed = seed.parse().map_err(|_| perr(1, format!("invalid seed `{seed}`")))?;
    if parts.next().is_some() {
        return Err(perr(1, "trailing header fields"));
    }
    Ok((n, model, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use VertexType::*;

    #[test]
    fn writes_documented_layout() {
        let g = TypedGraph::new(vec![Type1, Type2], vec![(0, 1)], false).unwrap();
        let text = EdgeListFile::new(g, "pa", 7).to_text();
        assert_eq!(text, "# n=2 model=pa seed=7\nv 0 1\nv 1 2\ne 0 1\n");
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let text = "# n=3 model=cm seed=99\n# params: p1=0.5\nv 0 1\nv 1 2\nv 2 2\ne 0 0\ne 1 2\ne 1 2\n";
        let f = EdgeListFile::parse(text).unwrap();
        assert!(f.graph.is_multigraph());
        assert_eq!(f.header.comments, vec!["params: p1=0.5".to_string()]);
        assert_eq!(f.to_text(), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "# n=2 model=er seed=1\nv 0 1\nv 1 3\n";
        match EdgeListFile::parse(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        let bad = "# n=2 model=er seed=1\nv 0 1\nv 1 1\ne 0 5\n";
        match EdgeListFile::parse(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(EdgeListFile::parse("n=2\n").is_err());
        assert!(EdgeListFile::parse("# n=3 model=er seed=1\nv 0 1\n").is_err());
    }
}

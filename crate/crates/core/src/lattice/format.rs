//! Plain-text graph files:
//!
//! ```text
//! # optional comments
//! n=4
//! 0,1
//! 1,2
//! ```

use std::fmt::Write as _;
use std::path::Path;

use super::{build_custom, LatticeError, LatticeGraph};

pub fn parse_graph(text: &str) -> Result<LatticeGraph, LatticeError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |msg: String| LatticeError::Parse { line: line_no, msg };
        match n {
            None => {
                let value = line
                    .strip_prefix("n=")
                    .ok_or_else(|| parse_err(format!("expected `n=<int>`, found `{line}`")))?;
                n = Some(
                    value
                        .trim()
                        .parse()
                        .map_err(|_| parse_err(format!("invalid vertex count `{value}`")))?,
                );
            }
            Some(_) => {
                let (u, v) = line
                    .split_once(',')
                    .ok_or_else(|| parse_err(format!("expected `u,v`, found `{line}`")))?;
                let u: usize =
                    u.trim().parse().map_err(|_| parse_err(format!("invalid vertex id `{u}`")))?;
                let v: usize =
                    v.trim().parse().map_err(|_| parse_err(format!("invalid vertex id `{v}`")))?;
                edges.push((u, v, line_no));
            }
        }
    }
    let n = n.ok_or(LatticeError::Parse { line: 0, msg: "missing `n=<int>` header".into() })?;
    let pairs: Vec<(usize, usize)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
    build_custom(n, &pairs).map_err(|e| {
        // Attach the offending line where the error names an edge or vertex.
        let line = match &e {
            LatticeError::SelfLoop(a) => edges.iter().find(|t| t.0 == *a && t.1 == *a).map(|t| t.2),
            LatticeError::DuplicateEdge(a, b) => edges
                .iter()
                .filter(|t| (t.0.min(t.1), t.0.max(t.1)) == (*a, *b))
                .nth(1)
                .map(|t| t.2),
            LatticeError::VertexOutOfRange { id, .. } => {
                edges.iter().find(|t| t.0 == *id || t.1 == *id).map(|t| t.2)
            }
            _ => None,
        };
        match line {
            Some(line) => LatticeError::Parse { line, msg: e.to_string() },
            None => e,
        }
    })
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<LatticeGraph, LatticeError> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| LatticeError::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_graph(&text)
}

/// Serialises with edges sorted by `(min id, max id)`.
pub fn write_graph(graph: &LatticeGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n={}", graph.n());
    for (a, b) in graph.sorted_edges() {
        let _ = writeln!(out, "{a},{b}");
    }
    out
}

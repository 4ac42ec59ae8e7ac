//! DIMACS edge format: `p edge n m`, `e u v` (1-indexed), plus `c label <id> <name>` lines.

use std::collections::HashSet;
use std::fmt::Write;

use thiserror::Error;

use crate::graph::{Graph, GraphBuilder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: missing 'p edge' header before data")]
    MissingHeader { line: usize },
    #[error("line {line}: malformed header: {text}")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: malformed line: {text}")]
    MalformedLine { line: usize, text: String },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: header declares {declared} edges, found {found}")]
    EdgeCount { line: usize, declared: usize, found: usize },
}

impl DimacsError {
    pub fn line(&self) -> usize {
        match *self {
            DimacsError::MissingHeader { line }
            | DimacsError::MalformedHeader { line, .. }
            | DimacsError::MalformedLine { line, .. }
            | DimacsError::VertexOutOfRange { line, .. }
            | DimacsError::SelfLoop { line, .. }
            | DimacsError::DuplicateEdge { line, .. }
            | DimacsError::EdgeCount { line, .. } => line,
        }
    }
}

fn parse_vertex(tok: Option<&str>, n: usize, line: usize, text: &str) -> Result<usize, DimacsError> {
    let v: usize = tok
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| DimacsError::MalformedLine { line, text: text.to_string() })?;
    if v == 0 || v > n {
        return Err(DimacsError::VertexOutOfRange { line, vertex: v, n });
    }
    Ok(v - 1)
}

pub fn parse_dimacs(text: &str) -> Result<Graph, DimacsError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut builder = GraphBuilder::new(0);
    let mut seen = HashSet::new();
    let mut labels = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        let mut toks = t.split_whitespace();
        match toks.next() {
            Some("c") => {
                if toks.next() == Some("label") {
                    labels.push((line, t.to_string()));
                }
            }
            Some("p") => {
                let fmt = toks.next();
                let n = toks.next().and_then(|x| x.parse::<usize>().ok());
                let m = toks.next().and_then(|x| x.parse::<usize>().ok());
                match (fmt, n, m, toks.next(), header) {
                    (Some("edge" | "col"), Some(n), Some(m), None, None) => {
                        header = Some((n, m, line));
                        builder = GraphBuilder::new(n);
                    }
                    _ => {
                        return Err(DimacsError::MalformedHeader { line, text: t.to_string() })
                    }
                }
            }
            Some("e") => {
                let (n, _, _) = header.ok_or(DimacsError::MissingHeader { line })?;
                let u = parse_vertex(toks.next(), n, line, t)?;
                let v = parse_vertex(toks.next(), n, line, t)?;
                if toks.next().is_some() {
                    return Err(DimacsError::MalformedLine { line, text: t.to_string() });
                }
                if u == v {
                    return Err(DimacsError::SelfLoop { line, vertex: u + 1 });
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(DimacsError::DuplicateEdge { line, u: u + 1, v: v + 1 });
                }
                builder.add_edge(u, v);
            }
            _ => return Err(DimacsError::MalformedLine { line, text: t.to_string() }),
        }
    }
    let (n, m, hline) = header.ok_or(DimacsError::MissingHeader { line: 1 })?;
    if seen.len() != m {
        return Err(DimacsError::EdgeCount { line: hline, declared: m, found: seen.len() });
    }
    for (line, t) in labels {
        let mut toks = t.splitn(4, char::is_whitespace).skip(2);
        let v = parse_vertex(toks.next(), n, line, &t)?;
        let name = toks.next().map(str::trim).filter(|s| !s.is_empty());
        let name = name.ok_or_else(|| DimacsError::MalformedLine { line, text: t.clone() })?;
        builder.set_label(v, name);
    }
    Ok(builder.build())
}

/// Serializes `g`; `comments` are emitted as leading `c` lines.
pub fn write_dimacs_with_comments(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for l in c.lines() {
            let _ = writeln!(out, "c {l}");
        }
    }
    let _ = writeln!(out, "p edge {} {}", g.n(), g.m());
    for (v, name) in g.labels() {
        let _ = writeln!(out, "c label {} {}", v + 1, name);
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

pub fn write_dimacs(g: &Graph) -> String {
    write_dimacs_with_comments(g, &[])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let p3 = parse_dimacs("p edge 3 2\ne 1 2\ne 2 3").unwrap();
        assert!(p3.same_structure(&Graph::path(3)));
        assert!(parse_dimacs("p edge 2 0").unwrap().same_structure(&Graph::empty(2)));
        let err = parse_dimacs("p edge 2 1\ne 1 1").unwrap_err();
        assert_eq!(err, DimacsError::SelfLoop { line: 2, vertex: 1 });
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(parse_dimacs("c hi\np edge x 1").unwrap_err().line(), 2);
        assert_eq!(parse_dimacs("p edge 2 1\n\ne 1 3").unwrap_err().line(), 3);
        assert_eq!(parse_dimacs("p edge 3 2\ne 1 2\ne 2 1").unwrap_err().line(), 3);
        assert_eq!(parse_dimacs("e 1 2").unwrap_err().line(), 1);
        assert!(matches!(parse_dimacs("p edge 3 2\ne 1 2"), Err(DimacsError::EdgeCount { .. })));
    }

    #[test]
    fn round_trip_with_labels() {
        let g = Graph::cycle(5).with_label(0, "v_s").with_label(3, "t 11");
        let text = write_dimacs(&g);
        assert_eq!(parse_dimacs(&text).unwrap(), g);
        assert_eq!(parse_dimacs(&write_dimacs(&Graph::null())).unwrap(), Graph::null());
    }
}

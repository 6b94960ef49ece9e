//! The `.emb` text format.
//!
//! ```text
//! # comments start with '#'
//! vertices 4
//! edge 0 0 1 +
//! edge 1 1 2 -
//! rot 0 : 0 3
//! ```
//!
//! The `vertices` line comes first. Edge ids must be dense `0..m`, the sign
//! defaults to `+`, and every vertex needs exactly one `rot` line listing
//! its edges in cyclic order.

use std::fmt::Write as _;

use thiserror::Error;

use crate::embedded::{EdgeId, EmbeddedGraph, EmbeddingError, Sign, VertexId};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EmbError {
    #[error("line {line}, column {column}: {message}")]
    SyntaxError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid embedding: {0}")]
    SemanticError(#[from] EmbeddingError),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> EmbError {
    EmbError::SyntaxError {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn number(lineno: usize, tok: Option<&(usize, &str)>, what: &str, eol: usize) -> Result<usize, EmbError> {
    match tok {
        None => Err(syntax(lineno, eol, format!("expected {what}"))),
        Some(&(col, t)) => t
            .parse()
            .map_err(|_| syntax(lineno, col, format!("expected {what}, found '{t}'"))),
    }
}

pub fn parse_emb(text: &str) -> Result<EmbeddedGraph, EmbError> {
    let mut n_vertices: Option<usize> = None;
    let mut edges: Vec<(EdgeId, VertexId, VertexId, Sign)> = Vec::new();
    let mut rotations: Vec<Option<Vec<EdgeId>>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col, keyword)) = toks.first() else {
            continue;
        };
        let eol = content.trim_end().len() + 1;
        match keyword {
            "vertices" => {
                if n_vertices.is_some() {
                    return Err(syntax(lineno, col, "duplicate 'vertices' line"));
                }
                let n = number(lineno, toks.get(1), "vertex count", eol)?;
                if let Some(&(c, t)) = toks.get(2) {
                    return Err(syntax(lineno, c, format!("unexpected '{t}'")));
                }
                n_vertices = Some(n);
                rotations = vec![None; n];
            }
            "edge" | "rot" if n_vertices.is_none() => {
                return Err(syntax(lineno, col, "'vertices' line must come first"));
            }
            "edge" => {
                let id = number(lineno, toks.get(1), "edge id", eol)?;
                let u = number(lineno, toks.get(2), "endpoint", eol)?;
                let v = number(lineno, toks.get(3), "endpoint", eol)?;
                let sign = match toks.get(4) {
                    None | Some((_, "+")) => Sign::Plus,
                    Some((_, "-")) => Sign::Minus,
                    Some(&(c, t)) => return Err(syntax(lineno, c, format!("expected '+' or '-', found '{t}'"))),
                };
                if let Some(&(c, t)) = toks.get(5) {
                    return Err(syntax(lineno, c, format!("unexpected '{t}'")));
                }
                edges.push((id, u, v, sign));
            }
            "rot" => {
                let v = number(lineno, toks.get(1), "vertex", eol)?;
                match toks.get(2) {
                    Some((_, ":")) => {}
                    Some(&(c, t)) => return Err(syntax(lineno, c, format!("expected ':', found '{t}'"))),
                    None => return Err(syntax(lineno, eol, "expected ':'")),
                }
                let order = toks[3..]
                    .iter()
                    .map(|&(c, t)| {
                        t.parse::<EdgeId>()
                            .map_err(|_| syntax(lineno, c, format!("expected edge id, found '{t}'")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let n = rotations.len();
                let slot = rotations
                    .get_mut(v)
                    .ok_or(EmbeddingError::VertexOutOfRange { vertex: v, n })?;
                if slot.is_some() {
                    return Err(syntax(lineno, col, format!("second rotation line for vertex {v}")));
                }
                *slot = Some(order);
            }
            other => return Err(syntax(lineno, col, format!("unknown keyword '{other}'"))),
        }
    }

    let n = n_vertices.ok_or_else(|| syntax(1, 1, "missing 'vertices' line"))?;
    let rotations = rotations
        .into_iter()
        .enumerate()
        .map(|(v, r)| {
            r.ok_or(EmbeddingError::RotationMismatch {
                vertex: v,
                reason: "no rotation line".into(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EmbeddedGraph::build(n, &edges, rotations)?)
}

/// Canonical text: edges by id with explicit signs, and each rotation
/// started at its least edge id.
pub fn write_emb(g: &EmbeddedGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "vertices {}", g.n_vertices());
    for (i, e) in g.edges().iter().enumerate() {
        let _ = writeln!(out, "edge {i} {} {} {}", e.u, e.v, e.sign.symbol());
    }
    for v in 0..g.n_vertices() {
        let rot = g.rotation(v);
        let start = rot
            .iter()
            .enumerate()
            .min_by_key(|&(_, e)| e)
            .map_or(0, |(p, _)| p);
        let _ = write!(out, "rot {v} :");
        for e in rot[start..].iter().chain(&rot[..start]) {
            let _ = write!(out, " {e}");
        }
        out.push('\n');
    }
    out
}

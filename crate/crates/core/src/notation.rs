//! Compact vertex notation used by the orbit tables.
//!
//! Vertices `1..=9` are written as digits, `10..=35` as letters `a..=z`,
//! so the triangle `{1, 10, 11}` is written `1ab`. Anything with a label
//! above 35 is written in bracket form, `[1,2,36]`. Parsing accepts both.

use std::fmt::Write as _;

use thiserror::Error;

use crate::complex::{Simplex, VertexLabel};

/// Largest label that still has a single-character spelling.
pub const MAX_COMPACT_LABEL: VertexLabel = 35;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NotationError {
    #[error("invalid vertex character {0:?}")]
    BadVertexChar(char),
    #[error("invalid vertex number {0:?}")]
    BadVertexNumber(String),
    #[error("empty face")]
    EmptyFace,
    #[error("unbalanced brackets in {0:?}")]
    Unbalanced(String),
    #[error("repeated vertex {0} in face")]
    RepeatedVertex(VertexLabel),
}

pub fn vertex_char(v: VertexLabel) -> Option<char> {
    match v {
        1..=9 => char::from_digit(v, 10),
        10..=MAX_COMPACT_LABEL => char::from_u32('a' as u32 + v - 10),
        _ => None,
    }
}

pub fn parse_vertex_char(c: char) -> Result<VertexLabel, NotationError> {
    match c {
        '1'..='9' => Ok(c as u32 - '0' as u32),
        'a'..='z' => Ok(c as u32 - 'a' as u32 + 10),
        _ => Err(NotationError::BadVertexChar(c)),
    }
}

/// Writes a vertex sequence compactly when every label allows it, otherwise
/// in bracket form.
pub fn format_vertices(vs: &[VertexLabel]) -> String {
    if vs.iter().all(|&v| vertex_char(v).is_some()) {
        vs.iter().filter_map(|&v| vertex_char(v)).collect()
    } else {
        format_bracketed(vs)
    }
}

pub fn format_bracketed(vs: &[VertexLabel]) -> String {
    let mut s = String::from("[");
    for (i, v) in vs.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "{v}");
    }
    s.push(']');
    s
}

/// Formats a list of faces. If any face needs bracket form, all of them use it
/// so the whole list stays unambiguous.
pub fn format_face_list<'a, I>(faces: I) -> String
where
    I: IntoIterator<Item = &'a [VertexLabel]>,
{
    let faces: Vec<&[VertexLabel]> = faces.into_iter().collect();
    let compact = faces
        .iter()
        .all(|f| f.iter().all(|&v| vertex_char(v).is_some()));
    let parts: Vec<String> = faces
        .iter()
        .map(|f| {
            if compact {
                format_vertices(f)
            } else {
                format_bracketed(f)
            }
        })
        .collect();
    parts.join(", ")
}

pub fn format_simplices(simplices: &[Simplex]) -> String {
    format_face_list(simplices.iter().map(|s| s.vertices()))
}

/// Parses one face written either compactly (`12a`) or in brackets
/// (`[1, 2, 10]`). Vertex order is preserved.
pub fn parse_face(token: &str) -> Result<Vec<VertexLabel>, NotationError> {
    let t = token.trim();
    let out: Vec<VertexLabel> = if let Some(inner) = t.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| NotationError::Unbalanced(t.to_string()))?;
        inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse::<VertexLabel>()
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| NotationError::BadVertexNumber(p.to_string()))
            })
            .collect::<Result<_, _>>()?
    } else {
        t.chars()
            .filter(|c| !c.is_whitespace())
            .map(parse_vertex_char)
            .collect::<Result<_, _>>()?
    };
    if out.is_empty() {
        return Err(NotationError::EmptyFace);
    }
    for (i, v) in out.iter().enumerate() {
        if out[..i].contains(v) {
            return Err(NotationError::RepeatedVertex(*v));
        }
    }
    Ok(out)
}

/// Splits a face list into face tokens. Commas inside brackets belong to the
/// face; commas and whitespace outside separate faces.
pub fn split_face_list(text: &str) -> Result<Vec<String>, NotationError> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for c in text.chars() {
        match c {
            '[' => {
                depth += 1;
                cur.push(c);
            }
            ']' => {
                if depth == 0 {
                    return Err(NotationError::Unbalanced(text.to_string()));
                }
                depth -= 1;
                cur.push(c);
                if depth == 0 {
                    tokens.push(std::mem::take(&mut cur));
                }
            }
            ',' | ';' if depth == 0 => {
                if !cur.trim().is_empty() {
                    tokens.push(std::mem::take(&mut cur));
                }
                cur.clear();
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.trim().is_empty() {
                    tokens.push(std::mem::take(&mut cur));
                }
                cur.clear();
            }
            _ => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(NotationError::Unbalanced(text.to_string()));
    }
    if !cur.trim().is_empty() {
        tokens.push(cur);
    }
    Ok(tokens
        .into_iter()
        .map(|t| t.trim().to_string())
        .filter(|t| !t.is_empty())
        .collect())
}

pub fn parse_face_list(text: &str) -> Result<Vec<Vec<VertexLabel>>, NotationError> {
    split_face_list(text)?
        .iter()
        .map(|t| parse_face(t))
        .collect()
}

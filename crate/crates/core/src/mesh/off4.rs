//! OFF4: a four-coordinate variant of the OFF mesh format.
//!
//! ```text
//! OFF4
//! <V> <F>
//! x1 x2 x3 x4        (V lines; integers, p/q fractions or finite decimals)
//! 3 i j k            (F lines; 0-based vertex indices)
//! ```
//!
//! `#` starts a comment that runs to the end of the line. Blank lines are
//! ignored. Writing always produces the canonical form: no comments, single
//! spaces, coordinates in lowest terms, triangles rotated to start at their
//! smallest index.

use std::fmt::Write as _;

use thiserror::Error;

use super::{MeshError, SimplicialSurface, TriangleSoup};
use crate::rational::{format_rational, parse_rational};
use crate::vector::Point4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Off4Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: vertex index {index} out of range (vertex count {vertex_count})")]
    IndexOutOfRange { line: usize, index: usize, vertex_count: usize },
}

fn syntax(line: usize, message: impl Into<String>) -> Off4Error {
    Off4Error::Syntax { line, message: message.into() }
}

/// Parse OFF4 text into an unchecked soup.
pub fn parse_off4(text: &str) -> Result<TriangleSoup, Off4Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line, header) = lines.next().ok_or_else(|| syntax(1, "missing OFF4 header"))?;
    if header != "OFF4" {
        return Err(syntax(line, format!("expected `OFF4`, found `{header}`")));
    }
    let (line, counts) = lines.next().ok_or_else(|| syntax(line + 1, "missing vertex/face counts"))?;
    let counts: Vec<&str> = counts.split_whitespace().collect();
    let [v_count, f_count] = counts[..] else {
        return Err(syntax(line, "expected `<V> <F>`"));
    };
    let parse_count = |s: &str| s.parse::<usize>().map_err(|_| syntax(line, format!("invalid count `{s}`")));
    let (v_count, f_count) = (parse_count(v_count)?, parse_count(f_count)?);

    let mut vertices = Vec::with_capacity(v_count);
    for k in 0..v_count {
        let (line, body) = lines.next().ok_or_else(|| syntax(0, format!("expected {v_count} vertices, found {k}")))?;
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(syntax(line, format!("expected 4 coordinates, found {}", fields.len())));
        }
        let mut coords = Vec::with_capacity(4);
        for f in fields {
            coords.push(parse_rational(f).map_err(|e| syntax(line, e.to_string()))?);
        }
        vertices.push(Point4(coords.try_into().unwrap()));
    }

    let mut triangles = Vec::with_capacity(f_count);
    for k in 0..f_count {
        let (line, body) = lines.next().ok_or_else(|| syntax(0, format!("expected {f_count} faces, found {k}")))?;
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.first() != Some(&"3") || fields.len() != 4 {
            return Err(syntax(line, "faces must be triangles written as `3 i j k`"));
        }
        let mut idx = [0usize; 3];
        for (slot, f) in idx.iter_mut().zip(&fields[1..]) {
            let i = f.parse::<usize>().map_err(|_| syntax(line, format!("invalid vertex index `{f}`")))?;
            if i >= v_count {
                return Err(Off4Error::IndexOutOfRange { line, index: i, vertex_count: v_count });
            }
            *slot = i;
        }
        triangles.push(idx);
    }
    if let Some((line, extra)) = lines.next() {
        return Err(syntax(line, format!("unexpected trailing content `{extra}`")));
    }
    Ok(TriangleSoup { vertices, triangles })
}

#[derive(Debug, Error)]
pub enum ReadSurfaceError {
    #[error(transparent)]
    Parse(#[from] Off4Error),
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

/// Parse and validate.
pub fn read_surface(text: &str) -> Result<SimplicialSurface, ReadSurfaceError> {
    Ok(SimplicialSurface::new(parse_off4(text)?)?)
}

pub fn write_off4(surface: &SimplicialSurface) -> String {
    write_soup(&surface.to_soup())
}

pub fn write_soup(soup: &TriangleSoup) -> String {
    let mut out = String::new();
    out.push_str("OFF4\n");
    let _ = writeln!(out, "{} {}", soup.vertices.len(), soup.triangles.len());
    for p in &soup.vertices {
        let parts: Vec<String> = p.coords().iter().map(format_rational).collect();
        let _ = writeln!(out, "{}", parts.join(" "));
    }
    for t in &soup.triangles {
        let t = super::Triangle::new(t[0], t[1], t[2]);
        let _ = writeln!(out, "3 {} {} {}", t.0[0], t.0[1], t.0[2]);
    }
    out
}

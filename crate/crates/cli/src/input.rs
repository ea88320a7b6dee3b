//! Reading meshes, vectors and JSON inputs.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use twoconvex_core::mesh::builtin::generate_builtin;
use twoconvex_core::mesh::off4::{parse_off4, ReadSurfaceError};
use twoconvex_core::rational::parse_rational;
use twoconvex_core::vector::{Point4, Vec4};
use twoconvex_core::{SimplicialSurface, TriangleSoup};

use crate::error::{CliError, CliResult};

const BUILTIN_PREFIX: &str = "builtin:";
const DEFAULT_RESOLUTION: usize = 8;

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

/// Unvalidated triangles from an OFF4 file or a `builtin:NAME[:RES]` spec.
pub fn load_soup(spec: &str) -> CliResult<TriangleSoup> {
    if let Some(rest) = spec.strip_prefix(BUILTIN_PREFIX) {
        return load_builtin(rest).map(|s| s.to_soup());
    }
    let path = Path::new(spec);
    parse_off4(&read_text(path)?).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

pub fn load_surface(spec: &str) -> CliResult<SimplicialSurface> {
    if let Some(rest) = spec.strip_prefix(BUILTIN_PREFIX) {
        return load_builtin(rest);
    }
    let path = Path::new(spec);
    twoconvex_core::mesh::off4::read_surface(&read_text(path)?).map_err(|e| match e {
        ReadSurfaceError::Parse(p) => CliError::parse(format!("{}: {p}", path.display())),
        ReadSurfaceError::Mesh(m) => CliError::validation(format!("{}: {m}", path.display())),
    })
}

fn load_builtin(rest: &str) -> CliResult<SimplicialSurface> {
    let (name, res) = match rest.split_once(':') {
        Some((n, r)) => (n, r.parse().map_err(|_| CliError::parse(format!("bad resolution `{r}`")))?),
        None => (rest, DEFAULT_RESOLUTION),
    };
    generate_builtin(name, res).map_err(|e| match e {
        twoconvex_core::mesh::builtin::BuiltinError::Mesh(m) => CliError::validation(m),
        other => CliError::parse(other),
    })
}

/// Four comma- or space-separated rationals.
pub fn parse_vec4(text: &str) -> CliResult<Vec4> {
    let parts: Vec<&str> = text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
    if parts.len() != 4 {
        return Err(CliError::parse(format!("expected 4 coordinates, got {} in `{text}`", parts.len())));
    }
    let mut out: Vec4 = Default::default();
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = parse_rational(p).map_err(|e| CliError::parse(format!("`{p}`: {e}")))?;
    }
    Ok(out)
}

pub fn parse_point(text: &str) -> CliResult<Point4> {
    parse_vec4(text).map(Point4)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read_text(path)?).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

/// Whitespace-separated vertex indices; `#` comments run to the end of the line.
pub fn read_vertex_map(path: &Path) -> CliResult<Vec<usize>> {
    let text = read_text(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            out.push(tok.parse().map_err(|_| CliError::parse(format!("{}: line {}: bad index `{tok}`", path.display(), i + 1)))?);
        }
    }
    Ok(out)
}

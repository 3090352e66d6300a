//! Minimal Wavefront OBJ reader: `v`, `f`, `g` and `o` statements.
//!
//! Every group becomes one [`Part`]. Faces that appear before any group
//! statement belong to a part named `default`. Polygons are fan-triangulated.
//! Normals, texture coordinates, materials and smoothing groups are skipped.

use std::fs;
use std::path::Path;

use crate::error::{LoadError, ParseError};
use crate::math::Vec3;

pub const DEFAULT_PART: &str = "default";

pub type Triangle = [Vec3; 3];

#[derive(Debug, Clone, PartialEq)]
pub struct Part {
    pub name: String,
    /// Model-space triangles.
    pub triangles: Vec<Triangle>,
    pub pickable: bool,
    /// Local offset shown while the part is selected.
    pub highlight_offset: Vec3,
    pub offset_applied: bool,
}

impl Part {
    pub fn new(name: impl Into<String>, triangles: Vec<Triangle>) -> Self {
        Self {
            name: name.into(),
            triangles,
            pickable: true,
            highlight_offset: Vec3::ZERO,
            offset_applied: false,
        }
    }

    /// The offset currently in effect: the highlight offset while selected.
    pub fn active_offset(&self) -> Vec3 {
        if self.offset_applied {
            self.highlight_offset
        } else {
            Vec3::ZERO
        }
    }
}

pub fn load_model(path: impl AsRef<Path>) -> Result<Vec<Part>, LoadError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| LoadError::io(path, e))?;
    parse_model(&text).map_err(|e| match e {
        LoadError::Parse(p) => LoadError::Parse(p.with_path(path)),
        other => other,
    })
}

pub fn parse_model(text: &str) -> Result<Vec<Part>, LoadError> {
    let mut vertices: Vec<Vec3> = Vec::new();
    let mut parts: Vec<Part> = Vec::new();
    let mut current: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        let mut tokens = line.split_whitespace();
        let Some(keyword) = tokens.next() else {
            continue;
        };
        match keyword {
            "v" => {
                let mut xyz = [0.0; 3];
                for slot in xyz.iter_mut() {
                    let tok = tokens
                        .next()
                        .ok_or_else(|| ParseError::new(lineno, "vertex needs 3 coordinates"))?;
                    *slot = parse_finite(tok, lineno)?;
                }
                // An optional w component is accepted and ignored.
                vertices.push(Vec3::new(xyz[0], xyz[1], xyz[2]));
            }
            "f" => {
                let mut corners = Vec::new();
                for tok in tokens {
                    corners.push(resolve_index(tok, vertices.len(), lineno)?);
                }
                if corners.len() < 3 {
                    return Err(ParseError::new(lineno, "face needs at least 3 vertices").into());
                }
                let part_idx = match current {
                    Some(i) => i,
                    None => {
                        let i = find_or_insert(&mut parts, DEFAULT_PART);
                        current = Some(i);
                        i
                    }
                };
                let tris = &mut parts[part_idx].triangles;
                for i in 2..corners.len() {
                    tris.push([
                        vertices[corners[0]],
                        vertices[corners[i - 1]],
                        vertices[corners[i]],
                    ]);
                }
            }
            "g" | "o" => {
                let name = tokens.next().unwrap_or(DEFAULT_PART);
                current = Some(find_or_insert(&mut parts, name));
            }
            "vn" | "vt" | "vp" | "s" | "usemtl" | "mtllib" | "l" | "p" => {}
            other => {
                return Err(
                    ParseError::new(lineno, format!("unsupported statement {other:?}")).into(),
                )
            }
        }
    }

    parts.retain(|p| !p.triangles.is_empty());
    if parts.is_empty() {
        return Err(LoadError::EmptyModel);
    }
    Ok(parts)
}

fn find_or_insert(parts: &mut Vec<Part>, name: &str) -> usize {
    if let Some(i) = parts.iter().position(|p| p.name == name) {
        return i;
    }
    parts.push(Part::new(name, Vec::new()));
    parts.len() - 1
}

fn parse_finite(tok: &str, line: usize) -> Result<f64, ParseError> {
    match tok.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(ParseError::new(line, format!("bad number {tok:?}"))),
    }
}

/// Resolves `i`, `i/t`, `i//n`, `i/t/n` (1-based or negative-relative) to a
/// 0-based vertex index.
fn resolve_index(tok: &str, count: usize, line: usize) -> Result<usize, ParseError> {
    let head = tok.split('/').next().unwrap_or("");
    let raw: i64 = head
        .parse()
        .map_err(|_| ParseError::new(line, format!("bad face index {tok:?}")))?;
    let resolved = if raw > 0 {
        raw - 1
    } else if raw < 0 {
        count as i64 + raw
    } else {
        -1
    };
    if resolved < 0 || resolved >= count as i64 {
        return Err(ParseError::new(
            line,
            format!("face index {raw} out of range ({count} vertices)"),
        ));
    }
    Ok(resolved as usize)
}

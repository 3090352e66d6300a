//! Part information registry.
//!
//! File format, one entry per line:
//!
//! ```text
//! # comment
//! DACH|0 8 0|Panorama roof, optional tilt function
//! ```
//!
//! Fields are the part name, the highlight offset `dx dy dz` in world units
//! and free info text (which may itself contain `|`). Unknown names resolve
//! to [`NONE`] and a zero offset rather than an error.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use crate::error::{LoadError, ParseError};
use crate::math::Vec3;

/// Info text returned for parts without an entry.
pub const NONE: &str = "NONE";

#[derive(Debug, Clone, PartialEq)]
pub struct RegistryEntry {
    pub info_text: String,
    pub offset: Vec3,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PartsRegistry {
    entries: HashMap<String, RegistryEntry>,
}

impl PartsRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, info_text: impl Into<String>, offset: Vec3) {
        self.entries.insert(
            name.into(),
            RegistryEntry {
                info_text: info_text.into(),
                offset,
            },
        );
    }

    pub fn get(&self, name: &str) -> Option<&RegistryEntry> {
        self.entries.get(name)
    }

    /// Info text for `name`, or [`NONE`].
    pub fn information(&self, name: &str) -> &str {
        self.get(name).map_or(NONE, |e| e.info_text.as_str())
    }

    /// Highlight offset for `name`, zero when unregistered.
    pub fn translation(&self, name: &str) -> Vec3 {
        self.get(name).map_or(Vec3::ZERO, |e| e.offset)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

pub fn load_registry(path: impl AsRef<Path>) -> Result<PartsRegistry, LoadError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| LoadError::io(path, e))?;
    parse_registry(&text).map_err(|e| LoadError::Parse(e.with_path(path)))
}

pub fn parse_registry(text: &str) -> Result<PartsRegistry, ParseError> {
    let mut reg = PartsRegistry::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.splitn(3, '|');
        let name = fields.next().unwrap_or("").trim();
        let (Some(offset), Some(info)) = (fields.next(), fields.next()) else {
            return Err(ParseError::new(lineno, "expected <name>|<dx dy dz>|<info>"));
        };
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(ParseError::new(
                lineno,
                format!("invalid part name {name:?}"),
            ));
        }
        let nums: Vec<f64> = offset
            .split_whitespace()
            .map(|t| t.parse::<f64>().ok().filter(|v| v.is_finite()))
            .collect::<Option<_>>()
            .ok_or_else(|| ParseError::new(lineno, format!("malformed offset {offset:?}")))?;
        let [dx, dy, dz] = nums[..] else {
            return Err(ParseError::new(
                lineno,
                format!("offset needs 3 components, got {}", nums.len()),
            ));
        };
        if reg.get(name).is_some() {
            log::warn!("registry line {lineno}: duplicate entry for {name:?}, later entry wins");
        }
        reg.insert(name, info.trim(), Vec3::new(dx, dy, dz));
    }
    Ok(reg)
}

use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MathError {
    #[error("matrix is singular (|det| = {det:e})")]
    SingularMatrix { det: f64 },
    #[error("rotation axis has zero length")]
    DegenerateAxis,
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error("cannot normalize a zero-length vector")]
    ZeroLength,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OrientationError {
    #[error(transparent)]
    Math(#[from] MathError),
    /// The camera sits on the marker normal, so its projection onto the
    /// marker plane has no direction.
    #[error("camera projection onto the marker plane is degenerate")]
    Degenerate,
    #[error("angle {0} is outside [0, 360)")]
    OutOfRange(f64),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("input queue is full ({0} pending events)")]
    QueueFull(usize),
    #[error("input queue consumer is gone")]
    Disconnected,
    #[error("inspection mode requires a visible pose first")]
    NoPoseYet,
}

/// Parse failure with a 1-based line number.
#[derive(Debug, Error)]
#[error("{}line {line}: {message}", path_prefix(.path))]
pub struct ParseError {
    pub path: Option<PathBuf>,
    pub line: usize,
    pub message: String,
}

fn path_prefix(p: &Option<PathBuf>) -> String {
    match p {
        Some(p) => format!("{}: ", p.display()),
        None => String::new(),
    }
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            path: None,
            line,
            message: message.into(),
        }
    }

    pub fn with_path(mut self, path: impl Into<PathBuf>) -> Self {
        self.path = Some(path.into());
        self
    }
}

/// Errors from reading model, registry, and trace files.
#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("model contains no faces")]
    EmptyModel,
}

impl LoadError {
    pub(crate) fn io(path: &std::path::Path, source: io::Error) -> Self {
        LoadError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SceneError {
    #[error("no part named {0:?} in the model")]
    UnknownPart(String),
    #[error("pixel ({x}, {y}) lies outside the {w}x{h} viewport")]
    OutOfViewport { x: f64, y: f64, w: u32, h: u32 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OrbitError {
    #[error("time {t_ms} ms is outside the script duration")]
    OutOfRange { t_ms: i64 },
    #[error("invalid orbit script: {0}")]
    InvalidScript(String),
}

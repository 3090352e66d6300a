//! Deterministic pose sources standing in for a camera tracker.
//!
//! [`OrbitScript`] produces a camera circling the marker; pose trace files
//! record arbitrary pose sequences:
//!
//! ```text
//! <timestamp_ms> POSE <16 scalars, column-major>
//! <timestamp_ms> LOST
//! ```
//!
//! Scalars are written with 17 significant digits so a save/load cycle is
//! lossless.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use crate::engine::{MarkerPose, RIGID_TOLERANCE};
use crate::error::{LoadError, OrbitError, ParseError};
use crate::math::{Mat4, Vec3};

/// `v` with 17 significant digits, round-trippable through `str::parse`.
pub fn format_scalar(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoseSample {
    pub timestamp_ms: i64,
    /// Marker → camera pose; `None` while the marker is lost.
    pub matrix: Option<Mat4>,
}

impl PoseSample {
    pub fn visible(&self) -> bool {
        self.matrix.is_some()
    }

    pub fn to_marker_pose(&self) -> MarkerPose {
        match self.matrix {
            Some(m) => MarkerPose::visible(m, self.timestamp_ms),
            None => MarkerPose::lost(self.timestamp_ms),
        }
    }
}

/// A camera orbiting the marker origin at constant height.
///
/// At azimuth φ the camera sits at `(r·sin φ, r·cos φ, h)` in the marker frame,
/// so φ = 0 is on the marker's +Y side where the orientation angle reads 180°,
/// and the angle reads `(180 + φ) mod 360` throughout the orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitScript {
    pub radius: f64,
    pub height: f64,
    pub angular_speed_deg_s: f64,
    pub fps: f64,
    pub duration_s: f64,
    /// Half-open `[start, end)` intervals in ms during which the marker is lost.
    pub dropout_intervals: Vec<(i64, i64)>,
}

impl Default for OrbitScript {
    fn default() -> Self {
        Self {
            radius: 5.0,
            height: 2.0,
            angular_speed_deg_s: 36.0,
            fps: 30.0,
            duration_s: 10.0,
            dropout_intervals: Vec::new(),
        }
    }
}

impl OrbitScript {
    pub fn validate(&self) -> Result<(), OrbitError> {
        let bad = |m: &str| Err(OrbitError::InvalidScript(m.to_string()));
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return bad("radius must be positive");
        }
        if !self.height.is_finite() || !self.angular_speed_deg_s.is_finite() {
            return bad("height and angular speed must be finite");
        }
        if !(self.fps > 0.0 && self.fps.is_finite()) {
            return bad("fps must be positive");
        }
        if !(self.duration_s >= 0.0 && self.duration_s.is_finite()) {
            return bad("duration must be non-negative");
        }
        let end_ms = self.duration_ms();
        for &(a, b) in &self.dropout_intervals {
            if a < 0 || b < a || b > end_ms {
                return bad("dropout intervals must lie within the duration");
            }
        }
        Ok(())
    }

    pub fn duration_ms(&self) -> i64 {
        (self.duration_s * 1000.0).round() as i64
    }

    pub fn azimuth_deg(&self, t_ms: i64) -> f64 {
        self.angular_speed_deg_s * t_ms as f64 / 1000.0
    }

    pub fn frame_count(&self) -> usize {
        (self.duration_s * self.fps + 1e-9).floor() as usize
    }

    /// Timestamp of frame `k`, rounded to whole milliseconds.
    pub fn frame_timestamp_ms(&self, k: usize) -> i64 {
        (k as f64 * 1000.0 / self.fps).round() as i64
    }

    /// All frames `0..frame_count()`; an empty vector for zero duration.
    pub fn samples(&self) -> Result<Vec<PoseSample>, OrbitError> {
        self.validate()?;
        (0..self.frame_count())
            .map(|k| orbit_pose(self, self.frame_timestamp_ms(k)))
            .collect()
    }

    fn in_dropout(&self, t_ms: i64) -> bool {
        self.dropout_intervals
            .iter()
            .any(|&(a, b)| a <= t_ms && t_ms < b)
    }
}

/// Marker → camera pose of a camera at `eye` (marker frame) looking at the
/// marker origin with the marker normal as up. The camera looks down its
/// local −Z with +Y up.
pub fn look_at_origin(eye: Vec3) -> Option<Mat4> {
    let forward = (-eye).normalize().ok()?;
    let right = forward.cross(Vec3::Z).normalize().ok()?;
    let up = right.cross(forward);
    // Inverse of the rigid camera → marker transform [right up -forward | eye].
    let rot = Mat4::from_rotation_translation([right, up, -forward], Vec3::ZERO).transpose();
    let t = -rot.transform_vector(eye);
    let mut pose = rot;
    pose.m[12] = t.x;
    pose.m[13] = t.y;
    pose.m[14] = t.z;
    Some(pose)
}

pub fn orbit_pose(script: &OrbitScript, t_ms: i64) -> Result<PoseSample, OrbitError> {
    if t_ms < 0 || t_ms > script.duration_ms() {
        return Err(OrbitError::OutOfRange { t_ms });
    }
    if script.in_dropout(t_ms) {
        return Ok(PoseSample {
            timestamp_ms: t_ms,
            matrix: None,
        });
    }
    let (s, c) = script.azimuth_deg(t_ms).to_radians().sin_cos();
    let eye = Vec3::new(script.radius * s, script.radius * c, script.height);
    let pose = look_at_origin(eye)
        .ok_or_else(|| OrbitError::InvalidScript("camera on the marker normal".into()))?;
    Ok(PoseSample {
        timestamp_ms: t_ms,
        matrix: Some(pose),
    })
}

pub fn format_pose_trace(samples: &[PoseSample]) -> String {
    let mut out = String::new();
    for s in samples {
        match &s.matrix {
            Some(m) => {
                write!(out, "{} POSE", s.timestamp_ms).unwrap();
                for v in &m.m {
                    out.push(' ');
                    out.push_str(&format_scalar(*v));
                }
                out.push('\n');
            }
            None => writeln!(out, "{} LOST", s.timestamp_ms).unwrap(),
        }
    }
    out
}

pub fn save_pose_trace(path: impl AsRef<Path>, samples: &[PoseSample]) -> io::Result<()> {
    if samples.is_empty() {
        return Err(io::Error::new(
            io::ErrorKind::InvalidInput,
            "refusing to write an empty pose trace",
        ));
    }
    fs::write(path, format_pose_trace(samples))
}

pub fn parse_pose_trace(text: &str) -> Result<Vec<PoseSample>, ParseError> {
    let mut out: Vec<PoseSample> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let ts_tok = tokens.next().unwrap_or_default();
        let timestamp_ms: i64 = ts_tok
            .parse()
            .map_err(|_| ParseError::new(lineno, format!("bad timestamp {ts_tok:?}")))?;
        if let Some(prev) = out.last() {
            if timestamp_ms < prev.timestamp_ms {
                return Err(ParseError::new(lineno, "timestamps must not decrease"));
            }
        }
        let matrix = match tokens.next() {
            Some("LOST") => {
                if tokens.next().is_some() {
                    return Err(ParseError::new(lineno, "LOST takes no arguments"));
                }
                None
            }
            Some("POSE") => {
                let vals: Vec<f64> = tokens
                    .map(|t| t.parse::<f64>().ok().filter(|v| v.is_finite()))
                    .collect::<Option<_>>()
                    .ok_or_else(|| ParseError::new(lineno, "malformed matrix entry"))?;
                let m: [f64; 16] = vals.try_into().map_err(|v: Vec<f64>| {
                    ParseError::new(lineno, format!("POSE needs 16 scalars, got {}", v.len()))
                })?;
                let m = Mat4::from_cols_array(m);
                if !m.is_rigid(RIGID_TOLERANCE) {
                    return Err(ParseError::new(lineno, "pose is not a rigid transform"));
                }
                Some(m)
            }
            Some(other) => {
                return Err(ParseError::new(lineno, format!("unknown record {other:?}")))
            }
            None => return Err(ParseError::new(lineno, "expected POSE or LOST")),
        };
        out.push(PoseSample {
            timestamp_ms,
            matrix,
        });
    }
    if out.is_empty() {
        return Err(ParseError::new(
            last_line.max(1),
            "pose trace has no samples",
        ));
    }
    Ok(out)
}

pub fn load_pose_trace(path: impl AsRef<Path>) -> Result<Vec<PoseSample>, LoadError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| LoadError::io(path, e))?;
    parse_pose_trace(&text).map_err(|e| LoadError::Parse(e.with_path(path)))
}

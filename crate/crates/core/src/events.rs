//! Input events and their line grammar.
//!
//! An event body is `<KIND> [args...]`:
//!
//! ```text
//! TOUCH_DOWN 412 305
//! TOUCH_MOVE 420 305
//! TOUCH_UP 420 305
//! TAP 300 200
//! PINCH_SCALE 1.25
//! COMMAND SET_AXIS_Z
//! ```
//!
//! Event trace files prefix each body with a millisecond timestamp
//! (`120 TOUCH_MOVE 412 305`); the live session protocol sends bare bodies.
//! Blank lines and lines starting with `#` are ignored in trace files.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{LoadError, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    SetModeTranslate,
    SetModeRotate,
    SetAxisX,
    SetAxisY,
    SetAxisZ,
    Reset,
    ToggleViewMode,
    ToggleGizmo,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::SetModeTranslate,
        Command::SetModeRotate,
        Command::SetAxisX,
        Command::SetAxisY,
        Command::SetAxisZ,
        Command::Reset,
        Command::ToggleViewMode,
        Command::ToggleGizmo,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::SetModeTranslate => "SET_MODE_TRANSLATE",
            Command::SetModeRotate => "SET_MODE_ROTATE",
            Command::SetAxisX => "SET_AXIS_X",
            Command::SetAxisY => "SET_AXIS_Y",
            Command::SetAxisZ => "SET_AXIS_Z",
            Command::Reset => "RESET",
            Command::ToggleViewMode => "TOGGLE_VIEW_MODE",
            Command::ToggleGizmo => "TOGGLE_GIZMO",
        }
    }
}

impl FromStr for Command {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown command {s:?}"))
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Touch coordinates are pixels with the origin at the top-left corner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InputEvent {
    TouchDown {
        x: f64,
        y: f64,
    },
    TouchMove {
        x: f64,
        y: f64,
    },
    TouchUp {
        x: f64,
        y: f64,
    },
    Tap {
        x: f64,
        y: f64,
    },
    /// Absolute scale, 1.0 being the original size.
    PinchScale(f64),
    Command(Command),
}

impl InputEvent {
    pub fn kind(&self) -> &'static str {
        match self {
            InputEvent::TouchDown { .. } => "TOUCH_DOWN",
            InputEvent::TouchMove { .. } => "TOUCH_MOVE",
            InputEvent::TouchUp { .. } => "TOUCH_UP",
            InputEvent::Tap { .. } => "TAP",
            InputEvent::PinchScale(_) => "PINCH_SCALE",
            InputEvent::Command(_) => "COMMAND",
        }
    }
}

impl fmt::Display for InputEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputEvent::TouchDown { x, y }
            | InputEvent::TouchMove { x, y }
            | InputEvent::TouchUp { x, y }
            | InputEvent::Tap { x, y } => write!(f, "{} {x} {y}", self.kind()),
            InputEvent::PinchScale(s) => write!(f, "PINCH_SCALE {s}"),
            InputEvent::Command(c) => write!(f, "COMMAND {c}"),
        }
    }
}

impl FromStr for InputEvent {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let Some((&kind, args)) = tokens.split_first() else {
            return Err("empty event".into());
        };
        let point = |args: &[&str]| -> Result<(f64, f64), String> {
            match args {
                [x, y] => Ok((coordinate(x)?, coordinate(y)?)),
                _ => Err(format!("{kind} takes 2 arguments, got {}", args.len())),
            }
        };
        match kind {
            "TOUCH_DOWN" => point(args).map(|(x, y)| InputEvent::TouchDown { x, y }),
            "TOUCH_MOVE" => point(args).map(|(x, y)| InputEvent::TouchMove { x, y }),
            "TOUCH_UP" => point(args).map(|(x, y)| InputEvent::TouchUp { x, y }),
            "TAP" => point(args).map(|(x, y)| InputEvent::Tap { x, y }),
            "PINCH_SCALE" => match args {
                [f] => {
                    let v: f64 = f.parse().map_err(|_| format!("bad scale factor {f:?}"))?;
                    if v > 0.0 && v.is_finite() {
                        Ok(InputEvent::PinchScale(v))
                    } else {
                        Err(format!("scale factor must be positive, got {f}"))
                    }
                }
                _ => Err(format!("PINCH_SCALE takes 1 argument, got {}", args.len())),
            },
            "COMMAND" => match args {
                [c] => c.parse().map(InputEvent::Command),
                _ => Err(format!("COMMAND takes 1 argument, got {}", args.len())),
            },
            other => Err(format!("unknown event kind {other:?}")),
        }
    }
}

fn coordinate(tok: &str) -> Result<f64, String> {
    match tok.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        _ => Err(format!("bad pixel coordinate {tok:?}")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimedEvent {
    pub timestamp_ms: i64,
    pub event: InputEvent,
}

impl fmt::Display for TimedEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.timestamp_ms, self.event)
    }
}

pub fn parse_event_trace(text: &str) -> Result<Vec<TimedEvent>, ParseError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (ts, body) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| ParseError::new(lineno, "expected <timestamp_ms> <KIND> [args...]"))?;
        let timestamp_ms: i64 = ts
            .parse()
            .map_err(|_| ParseError::new(lineno, format!("bad timestamp {ts:?}")))?;
        let event = body
            .parse()
            .map_err(|m: String| ParseError::new(lineno, m))?;
        out.push(TimedEvent {
            timestamp_ms,
            event,
        });
    }
    Ok(out)
}

pub fn load_event_trace(path: impl AsRef<Path>) -> Result<Vec<TimedEvent>, LoadError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| LoadError::io(path, e))?;
    parse_event_trace(&text).map_err(|e| LoadError::Parse(e.with_path(path)))
}

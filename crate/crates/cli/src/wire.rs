//! Text lines exchanged with the viewer over the WebSocket session.
//!
//! Viewer to server: event lines without a timestamp (`TOUCH_MOVE 412 305`).
//! Server to viewer, once per connection:
//! `MODEL <parts>`, then for each part `PART <name> <triangles>` followed by
//! one `TRI <9 scalars>` line per triangle. Per frame:
//! `FRAME <ts> <visible 0|1> <quadrant> <16 scalars> <scale>`, then
//! `MSG CANCEL` / `MSG INFO <text>` lines and, when the selection changes,
//! `HIGHLIGHT <name> <dx> <dy> <dz>` or `HIGHLIGHT NONE`.

use arinteract_core::scene::NONE;
use arinteract_core::tracker::format_scalar;
use arinteract_core::{FrameOutput, InputEvent, Part, Scene, UiMessage, Vec3};

pub fn model_preamble(parts: &[Part]) -> Vec<String> {
    let mut lines = vec![format!("MODEL {}", parts.len())];
    for part in parts {
        lines.push(format!("PART {} {}", part.name, part.triangles.len()));
        for tri in &part.triangles {
            let coords: Vec<String> = tri
                .iter()
                .flat_map(|v| v.to_array())
                .map(format_scalar)
                .collect();
            lines.push(format!("TRI {}", coords.join(" ")));
        }
    }
    lines
}

pub fn frame_line(out: &FrameOutput) -> String {
    let scalars: Vec<String> = out
        .model_matrix
        .m
        .iter()
        .map(|v| format_scalar(*v))
        .collect();
    format!(
        "FRAME {} {} {} {} {}",
        out.timestamp_ms,
        u8::from(out.marker_visible),
        out.orientation,
        scalars.join(" "),
        format_scalar(out.transform.scale)
    )
}

pub fn message_line(msg: &UiMessage) -> String {
    format!("MSG {msg}")
}

/// Name and active offset of the selected part.
pub type Highlight = Option<(String, Vec3)>;

pub fn current_highlight(scene: &Scene) -> Highlight {
    scene
        .selected()
        .map(|p| (p.name.clone(), p.active_offset()))
}

pub fn highlight_line(h: &Highlight) -> String {
    match h {
        Some((name, off)) => format!(
            "HIGHLIGHT {name} {} {} {}",
            format_scalar(off.x),
            format_scalar(off.y),
            format_scalar(off.z)
        ),
        None => format!("HIGHLIGHT {NONE}"),
    }
}

pub fn parse_viewer_line(line: &str) -> Result<InputEvent, String> {
    line.trim().parse()
}

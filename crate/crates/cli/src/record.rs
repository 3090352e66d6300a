//! Frame log records: one comma-separated line per frame.
//!
//! Fields: frame index, timestamp, visible (0/1), raw angle, quantized angle,
//! quadrant, 16 model-matrix scalars (column-major), tx, ty, tz, rx, ry, rz,
//! scale, then one field per UI message.

use std::io::Write;

use arinteract_core::tracker::format_scalar;
use arinteract_core::FrameOutput;

pub fn frame_fields(index: usize, out: &FrameOutput) -> Vec<String> {
    let t = &out.transform;
    let mut fields = vec![
        index.to_string(),
        out.timestamp_ms.to_string(),
        u8::from(out.marker_visible).to_string(),
        format_scalar(out.angle_deg),
        format_scalar(out.quantized_angle_deg),
        out.orientation.to_string(),
    ];
    fields.extend(out.model_matrix.m.iter().map(|v| format_scalar(*v)));
    fields.extend(
        [
            t.cum_translation.x,
            t.cum_translation.y,
            t.cum_translation.z,
            t.cum_rotation_deg.x,
            t.cum_rotation_deg.y,
            t.cum_rotation_deg.z,
            t.scale,
        ]
        .map(format_scalar),
    );
    fields.extend(out.events.iter().map(ToString::to_string));
    fields
}

/// CSV writer configured for frame logs: no header, variable field count,
/// `\n` terminators.
pub fn log_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .has_headers(false)
        .flexible(true)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

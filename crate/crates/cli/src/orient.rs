use std::io::Write;

use arinteract_core::orientation::marker_orientation_deg;
use arinteract_core::tracker::format_scalar;
use arinteract_core::{OrbitScript, OrientationState};

use crate::record::log_writer;
use crate::CliError;

/// Writes `t_ms,angle_deg,quadrant` for every visible orbit frame. Frames
/// inside dropout intervals have no pose and are omitted.
pub fn orientation_table<W: Write>(script: &OrbitScript, out: W) -> Result<usize, CliError> {
    let samples = script.samples()?;
    let mut state = OrientationState::default();
    let mut log = log_writer(out);
    let mut rows = 0;
    for s in &samples {
        let Some(m) = s.matrix else { continue };
        let Ok(angle) = marker_orientation_deg(&m, &mut state) else {
            continue;
        };
        log.write_record([
            s.timestamp_ms.to_string(),
            format_scalar(angle),
            state.last_quadrant.to_string(),
        ])?;
        rows += 1;
    }
    log.flush()?;
    Ok(rows)
}

use std::io::Write;

use arinteract_core::{EngineConfig, PoseSample, Scene, Session, TimedEvent};

use crate::record::{frame_fields, log_writer};
use crate::CliError;

pub struct ReplayInput {
    pub scene: Option<Scene>,
    pub samples: Vec<PoseSample>,
    pub events: Vec<TimedEvent>,
    pub config: EngineConfig,
}

/// Runs every pose sample through one session, enqueueing each event before
/// the first frame whose timestamp is not earlier than the event's. Returns
/// the number of frames written.
pub fn replay<W: Write>(input: ReplayInput, out: W) -> Result<usize, CliError> {
    let ReplayInput {
        scene,
        samples,
        mut events,
        config,
    } = input;
    // Stable sort keeps file order among equal timestamps.
    events.sort_by_key(|e| e.timestamp_ms);
    let mut pending = events.into_iter().peekable();
    let mut session = Session::new(config, scene);
    let mut log = log_writer(out);
    for (index, sample) in samples.iter().enumerate() {
        while let Some(e) = pending.next_if(|e| e.timestamp_ms <= sample.timestamp_ms) {
            session.enqueue_event(e.event)?;
        }
        let frame = session.step_frame(&sample.to_marker_pose());
        log.write_record(frame_fields(index, &frame))?;
    }
    let dropped = pending.count();
    if dropped > 0 {
        log::warn!("{dropped} events fall after the last pose sample and were not applied");
    }
    log.flush()?;
    Ok(samples.len())
}

//! Live session server: one engine session per WebSocket connection.
//!
//! Each connection runs a reader thread that parses viewer lines into the
//! session queue and a ticker that steps the session at the source frame rate
//! and pushes the results.

use std::io::{self, ErrorKind};
use std::net::{Ipv4Addr, SocketAddr, TcpListener, TcpStream};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, Mutex};
use std::thread;
use std::time::{Duration, Instant};

use arinteract_core::{EngineConfig, EventSender, MarkerPose, PoseSample, Scene, Session};
use tungstenite::{accept, Message, WebSocket};

use crate::wire::{
    current_highlight, frame_line, highlight_line, message_line, model_preamble, parse_viewer_line,
};
use crate::CliError;

/// How long the reader holds the socket while waiting for input.
const READ_POLL: Duration = Duration::from_millis(5);

#[derive(Debug, Clone)]
pub struct ServeConfig {
    pub scene: Scene,
    /// Pose samples replayed in a loop, one per tick.
    pub samples: Vec<PoseSample>,
    pub fps: f64,
    pub engine: EngineConfig,
}

impl ServeConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.samples.is_empty() {
            return Err(CliError::Usage("pose source yields no samples".into()));
        }
        if !(self.fps > 0.0 && self.fps.is_finite()) {
            return Err(CliError::Usage(format!(
                "fps must be positive, got {}",
                self.fps
            )));
        }
        Ok(())
    }
}

pub fn bind(port: u16) -> Result<TcpListener, CliError> {
    TcpListener::bind(SocketAddr::from((Ipv4Addr::LOCALHOST, port))).map_err(|e| {
        if e.kind() == ErrorKind::AddrInUse {
            CliError::PortInUse(port)
        } else {
            CliError::Io(e)
        }
    })
}

/// Accepts connections until the listener fails; each gets its own thread and
/// an independent session.
pub fn serve(listener: TcpListener, config: ServeConfig) -> Result<(), CliError> {
    config.validate()?;
    let config = Arc::new(config);
    for stream in listener.incoming() {
        let stream = match stream {
            Ok(s) => s,
            Err(e) => {
                log::warn!("accept failed: {e}");
                continue;
            }
        };
        let config = Arc::clone(&config);
        thread::spawn(move || {
            let peer = stream.peer_addr().ok();
            match run_connection(stream, &config) {
                Ok(()) => log::info!("connection {peer:?} closed"),
                Err(e) => log::warn!("connection {peer:?} ended: {e}"),
            }
        });
    }
    Ok(())
}

type SharedSocket = Arc<Mutex<WebSocket<TcpStream>>>;

#[allow(clippy::result_large_err)]
fn run_connection(stream: TcpStream, config: &ServeConfig) -> Result<(), tungstenite::Error> {
    let ws = accept(stream).map_err(|e| match e {
        tungstenite::HandshakeError::Failure(e) => e,
        tungstenite::HandshakeError::Interrupted(_) => tungstenite::Error::Io(io::Error::new(
            ErrorKind::WouldBlock,
            "handshake interrupted",
        )),
    })?;
    ws.get_ref().set_read_timeout(Some(READ_POLL))?;
    let socket: SharedSocket = Arc::new(Mutex::new(ws));

    let mut session = Session::new(config.engine.clone(), Some(config.scene.clone()));
    {
        let mut ws = socket.lock().expect("socket lock");
        for line in model_preamble(&config.scene.parts) {
            ws.write(Message::Text(line))?;
        }
        ws.flush()?;
    }

    let closed = Arc::new(AtomicBool::new(false));
    let reader = {
        let socket = Arc::clone(&socket);
        let closed = Arc::clone(&closed);
        let sender = session.sender();
        thread::spawn(move || read_loop(&socket, &sender, &closed))
    };

    let result = tick_loop(&socket, &mut session, config, &closed);
    closed.store(true, Ordering::SeqCst);
    let _ = reader.join();
    result
}

/// Producer side: viewer lines become queued events with server-side timing.
fn read_loop(socket: &SharedSocket, sender: &EventSender, closed: &AtomicBool) {
    while !closed.load(Ordering::SeqCst) {
        let msg = socket.lock().expect("socket lock").read();
        match msg {
            Ok(Message::Text(text)) => {
                for line in text.lines().filter(|l| !l.trim().is_empty()) {
                    match parse_viewer_line(line) {
                        Ok(event) => {
                            if let Err(e) = sender.send(event) {
                                log::warn!("dropping {line:?}: {e}");
                            }
                        }
                        Err(e) => log::warn!("ignoring viewer line {line:?}: {e}"),
                    }
                }
            }
            Ok(Message::Close(_)) => break,
            Ok(_) => {}
            Err(tungstenite::Error::Io(e))
                if matches!(e.kind(), ErrorKind::WouldBlock | ErrorKind::TimedOut) =>
            {
                // Let the ticker take the socket between polls.
                thread::yield_now();
            }
            Err(_) => break,
        }
    }
    closed.store(true, Ordering::SeqCst);
}

/// Consumer side: one frame per tick, cycling through the pose samples.
#[allow(clippy::result_large_err)]
fn tick_loop(
    socket: &SharedSocket,
    session: &mut Session,
    config: &ServeConfig,
    closed: &AtomicBool,
) -> Result<(), tungstenite::Error> {
    let period = Duration::from_secs_f64(1.0 / config.fps);
    let start = Instant::now();
    let mut highlight = None;
    for tick in 0u64.. {
        if closed.load(Ordering::SeqCst) {
            return Ok(());
        }
        let sample = &config.samples[(tick % config.samples.len() as u64) as usize];
        let ts = (tick as f64 * 1000.0 / config.fps).round() as i64;
        let pose = MarkerPose {
            timestamp_ms: ts,
            ..sample.to_marker_pose()
        };
        let out = session.step_frame(&pose);

        let mut lines = vec![frame_line(&out)];
        lines.extend(out.events.iter().map(message_line));
        let now = session.scene().map(current_highlight).unwrap_or(None);
        if now != highlight {
            lines.push(highlight_line(&now));
            highlight = now;
        }
        {
            let mut ws = socket.lock().expect("socket lock");
            for line in lines {
                ws.write(Message::Text(line))?;
            }
            ws.flush()?;
        }

        let next = start + period.mul_f64((tick + 1) as f64);
        if let Some(wait) = next.checked_duration_since(Instant::now()) {
            thread::sleep(wait);
        }
    }
    Ok(())
}

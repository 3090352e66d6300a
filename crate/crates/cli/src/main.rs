use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use arinteract::orient::orientation_table;
use arinteract::replay::{replay, ReplayInput};
use arinteract::serve::{bind, serve, ServeConfig};
use arinteract::{load_scene, CliError};
use arinteract_core::events::load_event_trace;
use arinteract_core::tracker::load_pose_trace;
use arinteract_core::{EngineConfig, Gains, OrbitScript, PoseSample};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    version,
    about = "Marker-based AR interaction engine: replay, orientation table, live server"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Replay a pose source and an event trace, writing one log line per frame.
    Replay {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        registry: Option<PathBuf>,
        /// Event trace; without it the replay runs with no input.
        #[arg(long)]
        events: Option<PathBuf>,
        /// Log file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        source: PoseSourceArgs,
        #[command(flatten)]
        gains: GainArgs,
    },
    /// Print `t_ms,angle_deg,quadrant` for every frame of a scripted orbit.
    Orient {
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        orbit: OrbitArgs,
    },
    /// Serve live sessions to the viewer over WebSocket.
    Serve {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        registry: Option<PathBuf>,
        #[arg(long, default_value_t = 8765)]
        port: u16,
        #[command(flatten)]
        source: PoseSourceArgs,
        #[command(flatten)]
        gains: GainArgs,
    },
}

#[derive(Args)]
struct PoseSourceArgs {
    /// Recorded pose trace; overrides the orbit flags.
    #[arg(long)]
    pose_trace: Option<PathBuf>,
    #[command(flatten)]
    orbit: OrbitArgs,
}

#[derive(Args)]
struct OrbitArgs {
    #[arg(long, default_value_t = 5.0)]
    orbit_radius: f64,
    #[arg(long, default_value_t = 2.0)]
    orbit_height: f64,
    /// Degrees per second.
    #[arg(long, default_value_t = 36.0)]
    angular_speed: f64,
    #[arg(long, default_value_t = 30.0)]
    fps: f64,
    /// Seconds.
    #[arg(long, default_value_t = 10.0)]
    duration: f64,
    /// Marker-loss interval `start_ms:end_ms` (half-open); repeatable.
    #[arg(long, value_parser = parse_dropout)]
    dropout: Vec<(i64, i64)>,
}

#[derive(Args)]
struct GainArgs {
    /// World units per dragged pixel.
    #[arg(long, default_value_t = 0.5)]
    translate_gain: f64,
    /// Degrees per dragged pixel.
    #[arg(long, default_value_t = 0.5)]
    rotate_gain: f64,
}

fn parse_dropout(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected start_ms:end_ms, got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

impl OrbitArgs {
    fn script(&self) -> OrbitScript {
        OrbitScript {
            radius: self.orbit_radius,
            height: self.orbit_height,
            angular_speed_deg_s: self.angular_speed,
            fps: self.fps,
            duration_s: self.duration,
            dropout_intervals: self.dropout.clone(),
        }
    }
}

impl PoseSourceArgs {
    fn samples(&self) -> Result<Vec<PoseSample>, CliError> {
        match &self.pose_trace {
            Some(p) => Ok(load_pose_trace(p)?),
            None => Ok(self.orbit.script().samples()?),
        }
    }
}

impl GainArgs {
    fn engine_config(&self) -> Result<EngineConfig, CliError> {
        for (name, v) in [
            ("translate", self.translate_gain),
            ("rotate", self.rotate_gain),
        ] {
            if !v.is_finite() {
                return Err(CliError::Usage(format!(
                    "{name} gain must be finite, got {v}"
                )));
            }
        }
        Ok(EngineConfig {
            gains: Gains {
                translate: self.translate_gain,
                rotate: self.rotate_gain,
            },
            ..EngineConfig::default()
        })
    }
}

fn open_output(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            CliError::Io(io::Error::new(e.kind(), format!("{}: {e}", p.display())))
        })?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Cmd::Replay {
            model,
            registry,
            events,
            out,
            source,
            gains,
        } => {
            let input = ReplayInput {
                scene: Some(load_scene(&model, registry.as_deref())?),
                samples: source.samples()?,
                events: match events {
                    Some(p) => load_event_trace(p)?,
                    None => Vec::new(),
                },
                config: gains.engine_config()?,
            };
            let frames = replay(input, open_output(out.as_deref())?)?;
            log::info!("replayed {frames} frames");
        }
        Cmd::Orient { out, orbit } => {
            let script = orbit.script();
            script.validate()?;
            orientation_table(&script, open_output(out.as_deref())?)?;
        }
        Cmd::Serve {
            model,
            registry,
            port,
            source,
            gains,
        } => {
            let fps = match source.pose_trace {
                Some(_) => source.orbit.fps,
                None => source.orbit.script().fps,
            };
            let config = ServeConfig {
                scene: load_scene(&model, registry.as_deref())?,
                samples: source.samples()?,
                fps,
                engine: gains.engine_config()?,
            };
            config.validate()?;
            let listener = bind(port)?;
            log::info!("listening on {}", listener.local_addr()?);
            serve(listener, config)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

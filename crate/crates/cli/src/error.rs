use std::io;

use arinteract_core::{EngineError, LoadError, OrbitError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("invalid orbit: {0}")]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("port {0} is already in use")]
    PortInUse(u16),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Load(_) | CliError::Orbit(_) => 2,
            CliError::Engine(_) => 3,
            CliError::PortInUse(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

//! Replay, orientation diagnostics and the live session server.

pub mod error;
pub mod orient;
pub mod record;
pub mod replay;
pub mod serve;
pub mod wire;

use std::path::Path;

use arinteract_core::scene::{load_model, load_registry};
use arinteract_core::{PartsRegistry, Scene};

pub use error::CliError;

/// Loads the model and, when given, its registry. Without a registry every
/// part maps to the NONE sentinel.
pub fn load_scene(model: &Path, registry: Option<&Path>) -> Result<Scene, CliError> {
    let parts = load_model(model)?;
    let registry = match registry {
        Some(p) => load_registry(p)?,
        None => PartsRegistry::new(),
    };
    Ok(Scene::new(parts, registry))
}

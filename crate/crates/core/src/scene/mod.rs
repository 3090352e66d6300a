//! Part-level model, picking and the parts-info registry.

mod obj;
mod pick;
mod registry;

pub use obj::{load_model, parse_model, Part, Triangle, DEFAULT_PART};
pub use pick::{
    pick, ray_triangle, screen_to_world_ray, select_part, PickCamera, PickHit, Ray, UiMessage,
    DEFAULT_MAX_PICK_DISTANCE, INTERSECT_EPS,
};
pub use registry::{load_registry, parse_registry, PartsRegistry, RegistryEntry, NONE};

/// A loaded model together with its registry. Selection state lives in the
/// parts' `offset_applied` flags.
#[derive(Debug, Clone, Default)]
pub struct Scene {
    pub parts: Vec<Part>,
    pub registry: PartsRegistry,
}

impl Scene {
    pub fn new(parts: Vec<Part>, registry: PartsRegistry) -> Self {
        Self { parts, registry }
    }

    pub fn selected(&self) -> Option<&Part> {
        self.parts.iter().find(|p| p.offset_applied)
    }

    pub fn part(&self, name: &str) -> Option<&Part> {
        self.parts.iter().find(|p| p.name == name)
    }

    pub fn triangle_count(&self) -> usize {
        self.parts.iter().map(|p| p.triangles.len()).sum()
    }
}

//! Screen rays, ray/mesh picking and part selection.

use std::fmt;

use crate::error::SceneError;
use crate::math::{Mat4, Vec3};
use crate::scene::obj::Part;
use crate::scene::registry::{PartsRegistry, NONE};

/// Default upper bound on pick distance, in world units.
pub const DEFAULT_MAX_PICK_DISTANCE: f64 = 10_000.0;

/// Parallel-ray and minimum-distance threshold for ray/triangle tests.
pub const INTERSECT_EPS: f64 = 1e-9;

/// Pinhole camera used to turn touch coordinates into rays.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PickCamera {
    pub viewport_w: u32,
    pub viewport_h: u32,
    pub fov_y_deg: f64,
    /// Camera centre in world coordinates.
    pub position: Vec3,
    /// World → camera transform. The camera looks down its local −Z with +Y up.
    pub view_matrix: Mat4,
}

impl PickCamera {
    /// Camera at the origin of camera space, the frame in which posed models
    /// are expressed.
    pub fn camera_space(viewport_w: u32, viewport_h: u32, fov_y_deg: f64) -> Self {
        Self {
            viewport_w,
            viewport_h,
            fov_y_deg,
            position: Vec3::ZERO,
            view_matrix: Mat4::IDENTITY,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.viewport_w > 0
            && self.viewport_h > 0
            && self.fov_y_deg > 0.0
            && self.fov_y_deg < 180.0
            && self.view_matrix.is_finite()
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        (0.0..=self.viewport_w as f64).contains(&x) && (0.0..=self.viewport_h as f64).contains(&y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub origin: Vec3,
    /// Unit length.
    pub dir: Vec3,
}

impl Ray {
    pub fn at(&self, t: f64) -> Vec3 {
        self.origin + self.dir * t
    }
}

/// Ray from the camera centre through screen point `(x, y)`.
///
/// Screen coordinates are continuous pixels with the origin at the top-left
/// corner and y growing downwards; the viewport centre maps to the view axis.
pub fn screen_to_world_ray(cam: &PickCamera, x: f64, y: f64) -> Result<Ray, SceneError> {
    if !cam.contains(x, y) {
        return Err(SceneError::OutOfViewport {
            x,
            y,
            w: cam.viewport_w,
            h: cam.viewport_h,
        });
    }
    let w = cam.viewport_w as f64;
    let h = cam.viewport_h as f64;
    let tan_half = (cam.fov_y_deg.to_radians() * 0.5).tan();
    let ndc_x = 2.0 * x / w - 1.0;
    let ndc_y = 1.0 - 2.0 * y / h;
    let local = Vec3::new(ndc_x * tan_half * (w / h), ndc_y * tan_half, -1.0);
    let to_world = cam
        .view_matrix
        .inverse()
        .expect("view matrix of a pick camera must be invertible");
    let dir = to_world
        .transform_vector(local)
        .normalize()
        .expect("pinhole direction is never zero");
    Ok(Ray {
        origin: cam.position,
        dir,
    })
}

/// Möller–Trumbore intersection. Both faces count, and so do hits exactly on
/// an edge. Returns the ray parameter of the hit when it is beyond
/// [`INTERSECT_EPS`].
pub fn ray_triangle(ray: &Ray, a: Vec3, b: Vec3, c: Vec3) -> Option<f64> {
    let e1 = b - a;
    let e2 = c - a;
    let p = ray.dir.cross(e2);
    let det = e1.dot(p);
    if det.abs() < INTERSECT_EPS {
        return None;
    }
    let inv = 1.0 / det;
    let s = ray.origin - a;
    let u = s.dot(p) * inv;
    if !(0.0..=1.0).contains(&u) {
        return None;
    }
    let q = s.cross(e1);
    let v = ray.dir.dot(q) * inv;
    if v < 0.0 || u + v > 1.0 {
        return None;
    }
    let t = e2.dot(q) * inv;
    (t > INTERSECT_EPS).then_some(t)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PickHit {
    pub part_index: usize,
    pub name: String,
    pub distance: f64,
}

/// Nearest pickable part hit by `ray`, with parts posed by `model_matrix`
/// (plus each part's active highlight offset, applied in model space).
/// Hits less than 1e-9 apart go to the part listed first.
pub fn pick(ray: &Ray, parts: &[Part], model_matrix: &Mat4, max_dist: f64) -> Option<PickHit> {
    let mut best: Option<(usize, f64)> = None;
    for (i, part) in parts.iter().enumerate() {
        if !part.pickable {
            continue;
        }
        let off = part.active_offset();
        let xf = model_matrix.translate_pose(off.x, off.y, off.z);
        for tri in &part.triangles {
            let [a, b, c] = tri.map(|v| xf.transform_point(v));
            let Some(t) = ray_triangle(ray, a, b, c) else {
                continue;
            };
            if t > max_dist {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bt)) if bi == i => t < bt,
                Some((_, bt)) => t < bt - INTERSECT_EPS,
            };
            if better {
                best = Some((i, t));
            }
        }
    }
    best.map(|(i, distance)| PickHit {
        part_index: i,
        name: parts[i].name.clone(),
        distance,
    })
}

/// Message for the info text box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UiMessage {
    /// Hide the current info text.
    Cancel,
    Info(String),
}

impl fmt::Display for UiMessage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UiMessage::Cancel => f.write_str("CANCEL"),
            UiMessage::Info(text) => write!(f, "INFO {text}"),
        }
    }
}

/// Selects `name`: clears any previous highlight, applies the registry offset
/// to the picked part and returns the text-box messages. Parts without an
/// entry still become the selected part (with a zero offset) but produce no
/// messages.
pub fn select_part(
    parts: &mut [Part],
    registry: &PartsRegistry,
    name: &str,
) -> Result<Vec<UiMessage>, SceneError> {
    let idx = parts
        .iter()
        .position(|p| p.name == name)
        .ok_or_else(|| SceneError::UnknownPart(name.to_string()))?;
    for part in parts.iter_mut() {
        part.offset_applied = false;
        part.highlight_offset = Vec3::ZERO;
    }
    let picked = &mut parts[idx];
    picked.highlight_offset = registry.translation(name);
    picked.offset_applied = true;

    let info = registry.information(name);
    if info == NONE {
        Ok(Vec::new())
    } else {
        Ok(vec![UiMessage::Cancel, UiMessage::Info(info.to_string())])
    }
}

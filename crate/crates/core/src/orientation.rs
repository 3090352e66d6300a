//! Marker orientation relative to the viewer.
//!
//! The camera position is recovered in marker space, projected onto the
//! marker plane and compared against the marker's up axis `(0, 1, 0)`. The
//! resulting 0–360° angle is quantized into four quadrants, and each quadrant
//! selects a remapping of user translation deltas so that a drag to the right
//! on screen always moves the model to the right as seen by the camera.
//!
//! Convention: a camera on the marker's +Y side reads 180°, on the +X side
//! 270°, on the −Y side 0° and on the −X side 90°.

use std::fmt;
use std::str::FromStr;

use crate::error::OrientationError;
use crate::math::{Mat4, Vec3};

/// Projections onto the marker plane shorter than this carry no direction.
pub const DEGENERATE_PROJECTION: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum OrientationQuadrant {
    #[default]
    Deg0,
    Deg90,
    Deg180,
    Deg270,
}

impl OrientationQuadrant {
    pub const ALL: [OrientationQuadrant; 4] = [
        OrientationQuadrant::Deg0,
        OrientationQuadrant::Deg90,
        OrientationQuadrant::Deg180,
        OrientationQuadrant::Deg270,
    ];

    pub fn degrees(self) -> f64 {
        match self {
            OrientationQuadrant::Deg0 => 0.0,
            OrientationQuadrant::Deg90 => 90.0,
            OrientationQuadrant::Deg180 => 180.0,
            OrientationQuadrant::Deg270 => 270.0,
        }
    }

    /// The quadrant 90° further on, wrapping after `Deg270`.
    pub fn next(self) -> Self {
        match self {
            OrientationQuadrant::Deg0 => OrientationQuadrant::Deg90,
            OrientationQuadrant::Deg90 => OrientationQuadrant::Deg180,
            OrientationQuadrant::Deg180 => OrientationQuadrant::Deg270,
            OrientationQuadrant::Deg270 => OrientationQuadrant::Deg0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            OrientationQuadrant::Deg0 => "DEG0",
            OrientationQuadrant::Deg90 => "DEG90",
            OrientationQuadrant::Deg180 => "DEG180",
            OrientationQuadrant::Deg270 => "DEG270",
        }
    }
}

impl fmt::Display for OrientationQuadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OrientationQuadrant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OrientationQuadrant::ALL
            .into_iter()
            .find(|q| q.as_str() == s)
            .ok_or_else(|| format!("unknown quadrant {s:?}"))
    }
}

/// Last good orientation, reused while the camera sits on the marker normal.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct OrientationState {
    pub last_angle_deg: Option<f64>,
    pub last_quadrant: OrientationQuadrant,
}

impl OrientationState {
    fn record(&mut self, angle: f64) {
        self.last_angle_deg = Some(angle);
        // Angles produced here are always in range.
        self.last_quadrant = quantize_orientation(angle).unwrap_or_default();
    }
}

/// Camera position expressed in the marker (object) frame.
///
/// Reads the translation triple of `transpose(inverse(pose))`, which sits in
/// its bottom row; for a rigid pose `[R | t]` this is `−Rᵀ t`.
pub fn camera_position_object_space(pose: &Mat4) -> Result<Vec3, OrientationError> {
    let inv_t = pose.inverse()?.transpose();
    Ok(Vec3::new(inv_t.get(3, 0), inv_t.get(3, 1), inv_t.get(3, 2)))
}

/// Angle of the marker relative to the camera in `[0, 360)`, without state.
pub fn orientation_angle_deg(pose: &Mat4) -> Result<f64, OrientationError> {
    let p = camera_position_object_space(pose)?;
    let projected = Vec3::new(p.x, p.y, 0.0);
    if projected.length().is_nan() || projected.length() < DEGENERATE_PROJECTION {
        return Err(OrientationError::Degenerate);
    }
    let v_proj = projected.normalize()?;
    let s = v_proj.dot(Vec3::Y).clamp(-1.0, 1.0);
    let w = s.acos().to_degrees();
    // A zero z-component (exactly parallel or anti-parallel) counts as positive.
    let sign = if v_proj.cross(Vec3::Y).z >= 0.0 {
        1.0
    } else {
        -1.0
    };
    Ok(wrap_degrees(180.0 + sign * w))
}

/// Stateful orientation: on a degenerate projection the previous angle (or
/// 0° when none exists) is returned and the state is left untouched.
/// Singular poses are still reported as errors.
pub fn marker_orientation_deg(
    pose: &Mat4,
    state: &mut OrientationState,
) -> Result<f64, OrientationError> {
    match orientation_angle_deg(pose) {
        Ok(angle) => {
            state.record(angle);
            Ok(angle)
        }
        Err(OrientationError::Degenerate) => Ok(state.last_angle_deg.unwrap_or(0.0)),
        Err(e) => Err(e),
    }
}

fn wrap_degrees(a: f64) -> f64 {
    let w = a.rem_euclid(360.0);
    // rem_euclid can round up to exactly 360 for tiny negative inputs.
    if w >= 360.0 {
        0.0
    } else {
        w
    }
}

/// Quadrant brackets are left-open, right-closed: `(315, 45]` wrapping through
/// zero is `Deg0`, `(45, 135]` is `Deg90`, and so on.
pub fn quantize_orientation(angle_deg: f64) -> Result<OrientationQuadrant, OrientationError> {
    if !(0.0..360.0).contains(&angle_deg) {
        return Err(OrientationError::OutOfRange(angle_deg));
    }
    Ok(if angle_deg <= 45.0 || angle_deg > 315.0 {
        OrientationQuadrant::Deg0
    } else if angle_deg <= 135.0 {
        OrientationQuadrant::Deg90
    } else if angle_deg <= 225.0 {
        OrientationQuadrant::Deg180
    } else {
        OrientationQuadrant::Deg270
    })
}

/// Maps a user translation (model axes, Y up) into the marker-relative
/// translation that moves the model the same way on screen.
///
/// Y is never touched. The half-turn negates X and Z; the quarter turns swap
/// them, since negation alone would move a horizontal drag along the viewing
/// direction.
pub fn remap_translation(user_delta: Vec3, q: OrientationQuadrant) -> Vec3 {
    let Vec3 { x, y, z } = user_delta;
    match q {
        OrientationQuadrant::Deg0 => Vec3::new(x, y, z),
        OrientationQuadrant::Deg90 => Vec3::new(z, y, -x),
        OrientationQuadrant::Deg180 => Vec3::new(-x, y, -z),
        OrientationQuadrant::Deg270 => Vec3::new(-z, y, x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Pose whose camera sits at `cam` (marker frame) looking at the origin,
    /// marker normal as up.
    fn looking_at_origin(cam: Vec3) -> Mat4 {
        let f = (-cam).normalize().unwrap();
        let r = f.cross(Vec3::Z).normalize().unwrap();
        let u = r.cross(f);
        let cam_to_marker = Mat4::from_rotation_translation([r, u, -f], cam);
        cam_to_marker.inverse().unwrap()
    }

    #[test]
    fn camera_in_front_of_object() {
        let p = camera_position_object_space(&Mat4::translation(0.0, 0.0, -5.0)).unwrap();
        assert!((p - Vec3::new(0.0, 0.0, 5.0)).length() < 1e-12);
        let p = camera_position_object_space(&Mat4::IDENTITY).unwrap();
        assert_eq!(p, Vec3::ZERO);
    }

    #[test]
    fn camera_position_matches_rotated_translation_formula() {
        let pose = Mat4::rotation_z(90.0) * Mat4::translation(0.0, 0.0, -5.0);
        let p = camera_position_object_space(&pose).unwrap();
        // −Rᵀt from the raw pose entries.
        let t = pose.translation_part();
        let analytic = -Vec3::new(
            pose.column(0).dot(t),
            pose.column(1).dot(t),
            pose.column(2).dot(t),
        );
        assert!((p - analytic).length() < 1e-7);
        assert!((p - Vec3::new(0.0, 0.0, 5.0)).length() < 1e-12);
    }

    #[test]
    fn singular_pose_is_an_error() {
        let pose = Mat4::scaling(0.0, 1.0, 1.0);
        assert!(matches!(
            camera_position_object_space(&pose),
            Err(OrientationError::Math(_))
        ));
        let mut st = OrientationState::default();
        assert!(marker_orientation_deg(&pose, &mut st).is_err());
    }

    #[test]
    fn cardinal_projection_angles() {
        // (x, y, 0) × (0, 1, 0) = (0, 0, x)
        let cases = [
            (Vec3::new(0.0, 1.0, 0.0), 180.0),
            (Vec3::new(1.0, 0.0, 0.0), 270.0),
            (Vec3::new(-1.0, 0.0, 0.0), 90.0),
            (Vec3::new(0.0, -1.0, 0.0), 0.0),
        ];
        for (dir, expect) in cases {
            let pose = looking_at_origin(dir * 4.0 + Vec3::new(0.0, 0.0, 2.0));
            let a = orientation_angle_deg(&pose).unwrap();
            assert!((a - expect).abs() < 1e-9, "{dir}: {a} vs {expect}");
        }
    }

    #[test]
    fn degenerate_projection_holds_last_angle() {
        let mut st = OrientationState::default();
        let overhead = Mat4::translation(0.0, 0.0, -3.0);
        assert_eq!(
            orientation_angle_deg(&overhead),
            Err(OrientationError::Degenerate)
        );
        assert_eq!(marker_orientation_deg(&overhead, &mut st).unwrap(), 0.0);
        assert_eq!(st, OrientationState::default());

        let side = looking_at_origin(Vec3::new(3.0, 0.0, 1.0));
        let a = marker_orientation_deg(&side, &mut st).unwrap();
        assert!((a - 270.0).abs() < 1e-9);
        assert_eq!(st.last_quadrant, OrientationQuadrant::Deg270);
        assert_eq!(marker_orientation_deg(&overhead, &mut st).unwrap(), a);
        assert_eq!(st.last_quadrant, OrientationQuadrant::Deg270);
    }

    #[test]
    fn quantize_examples() {
        use OrientationQuadrant::*;
        assert_eq!(quantize_orientation(0.0).unwrap(), Deg0);
        assert_eq!(quantize_orientation(100.0).unwrap(), Deg90);
        assert_eq!(quantize_orientation(45.0).unwrap(), Deg0);
        assert_eq!(quantize_orientation(45.0001).unwrap(), Deg90);
        assert_eq!(quantize_orientation(135.0).unwrap(), Deg90);
        assert_eq!(quantize_orientation(200.0).unwrap(), Deg180);
        assert_eq!(quantize_orientation(225.0).unwrap(), Deg180);
        assert_eq!(quantize_orientation(315.0).unwrap(), Deg270);
        assert_eq!(quantize_orientation(315.0001).unwrap(), Deg0);
        assert_eq!(quantize_orientation(359.999).unwrap(), Deg0);
        for bad in [-0.1, 360.0, 400.0, f64::NAN] {
            assert!(matches!(
                quantize_orientation(bad),
                Err(OrientationError::OutOfRange(_))
            ));
        }
    }

    #[test]
    fn remap_examples() {
        use OrientationQuadrant::*;
        let d = Vec3::new(50.0, 0.0, 0.0);
        assert_eq!(remap_translation(d, Deg0), Vec3::new(50.0, 0.0, 0.0));
        assert_eq!(remap_translation(d, Deg180), Vec3::new(-50.0, 0.0, -0.0));
        assert_eq!(remap_translation(d, Deg90), Vec3::new(0.0, 0.0, -50.0));
        for q in OrientationQuadrant::ALL {
            let up = remap_translation(Vec3::new(0.0, 7.0, 0.0), q);
            assert_eq!(up.y, 7.0);
            assert_eq!(up.x.abs() + up.z.abs(), 0.0);
        }
    }

    #[test]
    fn remap_cycles() {
        use OrientationQuadrant::*;
        let v = Vec3::new(1.5, -2.0, 3.25);
        assert_eq!(remap_translation(remap_translation(v, Deg180), Deg180), v);
        let mut w = v;
        for _ in 0..4 {
            w = remap_translation(w, Deg90);
        }
        assert_eq!(w, v);
        let mut w = v;
        for _ in 0..4 {
            w = remap_translation(w, Deg270);
        }
        assert_eq!(w, v);
    }

    #[test]
    fn quadrant_order_and_names() {
        use OrientationQuadrant::*;
        assert!(Deg0 < Deg90 && Deg90 < Deg180 && Deg180 < Deg270);
        assert_eq!(Deg270.next(), Deg0);
        for q in OrientationQuadrant::ALL {
            assert_eq!(q.as_str().parse::<OrientationQuadrant>().unwrap(), q);
        }
    }
}

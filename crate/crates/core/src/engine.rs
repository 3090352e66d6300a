//! Interaction session and per-frame loop.
//!
//! Each frame drains the input queue, updates the accumulated user transform
//! according to the active modes, composes the model matrix from the live
//! (tracking) or frozen (inspection) marker pose, and resolves taps against
//! the posed model.
//!
//! The input queue is the only state shared between threads: one producer
//! pushes through an [`EventSender`] while the thread owning the [`Session`]
//! calls [`Session::step_frame`].

use std::sync::mpsc::{self, Receiver, SyncSender, TrySendError};

use crate::error::EngineError;
use crate::events::{Command, InputEvent};
use crate::math::{Mat4, Vec3};
use crate::orientation::{
    marker_orientation_deg, remap_translation, OrientationQuadrant, OrientationState,
};
use crate::scene::{
    pick, screen_to_world_ray, select_part, PickCamera, Scene, UiMessage, DEFAULT_MAX_PICK_DISTANCE,
};

pub const MIN_SCALE: f64 = 0.3;
pub const MAX_SCALE: f64 = 5.0;
pub const QUEUE_CAPACITY: usize = 1024;
/// Tolerance of the rigid-pose check applied to incoming marker poses.
pub const RIGID_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformState {
    /// User translation in model axes (Y up), world units.
    pub cum_translation: Vec3,
    /// User rotation about model X, Y, Z in degrees.
    pub cum_rotation_deg: Vec3,
    /// Absolute uniform scale, always within `[MIN_SCALE, MAX_SCALE]`.
    pub scale: f64,
}

impl Default for TransformState {
    fn default() -> Self {
        Self {
            cum_translation: Vec3::ZERO,
            cum_rotation_deg: Vec3::ZERO,
            scale: 1.0,
        }
    }
}

impl TransformState {
    pub fn with_scale(mut self, factor: f64) -> Self {
        self.scale = clamp_scale(factor);
        self
    }
}

/// Clamps a pinch factor into the allowed scale range. Non-finite or
/// non-positive input maps to the lower bound.
pub fn clamp_scale(factor: f64) -> f64 {
    if factor.is_nan() {
        return MIN_SCALE;
    }
    factor.clamp(MIN_SCALE, MAX_SCALE)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InteractionMode {
    #[default]
    Translate,
    Rotate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ViewMode {
    #[default]
    Tracking,
    Inspection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Axis {
    #[default]
    X,
    Y,
    Z,
}

impl Axis {
    pub fn unit(self) -> Vec3 {
        match self {
            Axis::X => Vec3::X,
            Axis::Y => Vec3::Y,
            Axis::Z => Vec3::Z,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SessionModes {
    pub interaction: InteractionMode,
    pub view: ViewMode,
    pub axis: Axis,
    pub gizmo_visible: bool,
}

impl Default for SessionModes {
    fn default() -> Self {
        Self {
            interaction: InteractionMode::Translate,
            view: ViewMode::Tracking,
            axis: Axis::X,
            gizmo_visible: true,
        }
    }
}

/// Marker → camera pose for one frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkerPose {
    pub matrix: Mat4,
    pub visible: bool,
    pub timestamp_ms: i64,
}

impl MarkerPose {
    pub fn visible(matrix: Mat4, timestamp_ms: i64) -> Self {
        Self {
            matrix,
            visible: true,
            timestamp_ms,
        }
    }

    pub fn lost(timestamp_ms: i64) -> Self {
        Self {
            matrix: Mat4::IDENTITY,
            visible: false,
            timestamp_ms,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrameOutput {
    pub timestamp_ms: i64,
    /// Identity when no model is shown this frame.
    pub model_matrix: Mat4,
    /// Whether `model_matrix` is valid: the marker is tracked, or the session
    /// is in inspection mode.
    pub marker_visible: bool,
    /// Last measured orientation angle in `[0, 360)`.
    pub angle_deg: f64,
    pub orientation: OrientationQuadrant,
    pub quantized_angle_deg: f64,
    pub events: Vec<UiMessage>,
    pub transform: TransformState,
    pub modes: SessionModes,
}

/// Drag-to-transform gains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gains {
    /// World units per pixel.
    pub translate: f64,
    /// Degrees per pixel.
    pub rotate: f64,
}

impl Default for Gains {
    fn default() -> Self {
        Self {
            translate: 0.5,
            rotate: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EngineConfig {
    pub gains: Gains,
    pub camera: PickCamera,
    pub max_pick_distance: f64,
    pub queue_capacity: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            gains: Gains::default(),
            camera: PickCamera::camera_space(640, 480, 45.0),
            max_pick_distance: DEFAULT_MAX_PICK_DISTANCE,
            queue_capacity: QUEUE_CAPACITY,
        }
    }
}

/// Producer half of a session's bounded input queue.
#[derive(Debug, Clone)]
pub struct EventSender {
    tx: SyncSender<InputEvent>,
    capacity: usize,
}

impl EventSender {
    /// Appends without blocking; fails when the consumer has fallen
    /// `capacity` events behind.
    pub fn send(&self, e: InputEvent) -> Result<(), EngineError> {
        self.tx.try_send(e).map_err(|err| match err {
            TrySendError::Full(_) => EngineError::QueueFull(self.capacity),
            TrySendError::Disconnected(_) => EngineError::Disconnected,
        })
    }
}

/// Consumer half of the input queue.
#[derive(Debug)]
pub struct EventReceiver {
    rx: Receiver<InputEvent>,
}

impl EventReceiver {
    /// Everything queued so far, oldest first.
    pub fn drain(&self) -> impl Iterator<Item = InputEvent> + '_ {
        self.rx.try_iter()
    }
}

/// Bounded single-producer/single-consumer event queue.
pub fn event_queue(capacity: usize) -> (EventSender, EventReceiver) {
    let capacity = capacity.max(1);
    let (tx, rx) = mpsc::sync_channel(capacity);
    (EventSender { tx, capacity }, EventReceiver { rx })
}

/// One user transform update from a screen drag of `(dx_px, dy_px)`.
///
/// In translate mode horizontal drags drive X and Z, vertical drags (screen
/// up positive) drive Y, and the result is remapped for the marker quadrant.
/// In rotate mode horizontal drags rotate about the active axis.
pub fn apply_touch_delta(
    state: &TransformState,
    modes: &SessionModes,
    quadrant: OrientationQuadrant,
    dx_px: f64,
    dy_px: f64,
    gains: &Gains,
) -> TransformState {
    let mut next = *state;
    match modes.interaction {
        InteractionMode::Translate => {
            let amount = match modes.axis {
                Axis::X | Axis::Z => dx_px,
                Axis::Y => -dy_px,
            };
            let delta = remap_translation(modes.axis.unit() * (amount * gains.translate), quadrant);
            next.cum_translation = next.cum_translation + delta;
        }
        InteractionMode::Rotate => {
            let step = dx_px * gains.rotate;
            let r = &mut next.cum_rotation_deg;
            match modes.axis {
                Axis::X => r.x += step,
                Axis::Y => r.y += step,
                Axis::Z => r.z += step,
            }
        }
    }
    next
}

/// Final model matrix:
/// `pose · T(tx, tz, ty) · R(90°, X) · R(rx, X) · R(ry, Y) · R(rz, Z) · S(scale)`.
///
/// The model is Y-up while the marker frame has its normal on Z, so the
/// user's Y and Z translations trade slots before the frame-conversion
/// rotation turns model +Y onto the marker normal.
pub fn compose_model_matrix(pose: &Mat4, state: &TransformState) -> Mat4 {
    let t = state.cum_translation;
    let r = state.cum_rotation_deg;
    let m = pose
        .translate_pose(t.x, 0.0, 0.0)
        .translate_pose(0.0, t.z, 0.0)
        .translate_pose(0.0, 0.0, t.y)
        .multiply(&Mat4::rotation_x(90.0))
        .multiply(&Mat4::rotation_x(r.x))
        .multiply(&Mat4::rotation_y(r.y))
        .multiply(&Mat4::rotation_z(r.z));
    m.scale_pose(clamp_scale(state.scale))
        .expect("clamped scale is positive")
}

pub struct Session {
    config: EngineConfig,
    sender: EventSender,
    inbox: EventReceiver,
    transform: TransformState,
    modes: SessionModes,
    orientation: OrientationState,
    angle_deg: f64,
    last_visible_pose: Option<Mat4>,
    frozen_pose: Option<Mat4>,
    last_touch: Option<(f64, f64)>,
    scene: Option<Scene>,
}

impl Session {
    pub fn new(config: EngineConfig, scene: Option<Scene>) -> Self {
        let (sender, inbox) = event_queue(config.queue_capacity);
        Self {
            config,
            sender,
            inbox,
            transform: TransformState::default(),
            modes: SessionModes::default(),
            orientation: OrientationState::default(),
            angle_deg: 0.0,
            last_visible_pose: None,
            frozen_pose: None,
            last_touch: None,
            scene,
        }
    }

    /// A producer handle that may be moved to another thread.
    pub fn sender(&self) -> EventSender {
        self.sender.clone()
    }

    pub fn enqueue_event(&self, e: InputEvent) -> Result<(), EngineError> {
        self.sender.send(e)
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn transform(&self) -> &TransformState {
        &self.transform
    }

    pub fn modes(&self) -> &SessionModes {
        &self.modes
    }

    pub fn quadrant(&self) -> OrientationQuadrant {
        self.orientation.last_quadrant
    }

    pub fn scene(&self) -> Option<&Scene> {
        self.scene.as_ref()
    }

    pub fn frozen_pose(&self) -> Option<&Mat4> {
        self.frozen_pose.as_ref()
    }

    /// Switches view mode. Entering inspection freezes the last visible pose.
    pub fn set_view_mode(&mut self, mode: ViewMode) -> Result<(), EngineError> {
        match (self.modes.view, mode) {
            (ViewMode::Tracking, ViewMode::Inspection) => {
                let pose = self.last_visible_pose.ok_or(EngineError::NoPoseYet)?;
                self.frozen_pose = Some(pose);
            }
            (ViewMode::Inspection, ViewMode::Tracking) => self.frozen_pose = None,
            _ => return Ok(()),
        }
        self.modes.view = mode;
        Ok(())
    }

    pub fn step_frame(&mut self, pose: &MarkerPose) -> FrameOutput {
        let pose_ok = pose.visible && pose.matrix.is_rigid(RIGID_TOLERANCE);
        if pose.visible && !pose_ok {
            log::debug!("frame {}: rejecting non-rigid pose", pose.timestamp_ms);
        }
        if pose_ok {
            self.last_visible_pose = Some(pose.matrix);
            if self.modes.view == ViewMode::Tracking {
                if let Ok(angle) = marker_orientation_deg(&pose.matrix, &mut self.orientation) {
                    self.angle_deg = angle;
                }
            }
        }

        let mut taps = Vec::new();
        let pending: Vec<InputEvent> = self.inbox.drain().collect();
        for event in pending {
            self.apply_event(event, pose_ok, &mut taps);
        }

        let base = match self.modes.view {
            ViewMode::Inspection => self.frozen_pose,
            ViewMode::Tracking => pose_ok.then_some(pose.matrix),
        };
        let model_matrix = base.map(|p| compose_model_matrix(&p, &self.transform));

        let mut messages = Vec::new();
        if let Some(m) = &model_matrix {
            for (x, y) in taps {
                messages.extend(self.resolve_tap(m, x, y));
            }
        }

        let quadrant = self.orientation.last_quadrant;
        FrameOutput {
            timestamp_ms: pose.timestamp_ms,
            model_matrix: model_matrix.unwrap_or(Mat4::IDENTITY),
            marker_visible: model_matrix.is_some(),
            angle_deg: self.angle_deg,
            orientation: quadrant,
            quantized_angle_deg: quadrant.degrees(),
            events: messages,
            transform: self.transform,
            modes: self.modes,
        }
    }

    /// Transform-changing input is only honoured while a model is placed:
    /// with the marker tracked, or in inspection mode.
    fn apply_event(&mut self, event: InputEvent, pose_ok: bool, taps: &mut Vec<(f64, f64)>) {
        let placed = pose_ok || self.modes.view == ViewMode::Inspection;
        match event {
            InputEvent::Command(c) => self.apply_command(c, placed),
            InputEvent::TouchDown { x, y } => self.last_touch = Some((x, y)),
            InputEvent::TouchMove { x, y } => {
                if let (Some((px, py)), true) = (self.last_touch, placed) {
                    self.transform = apply_touch_delta(
                        &self.transform,
                        &self.modes,
                        self.orientation.last_quadrant,
                        x - px,
                        y - py,
                        &self.config.gains,
                    );
                }
                self.last_touch = Some((x, y));
            }
            InputEvent::TouchUp { .. } => self.last_touch = None,
            InputEvent::Tap { x, y } => {
                if placed {
                    taps.push((x, y));
                }
            }
            InputEvent::PinchScale(f) => {
                if placed {
                    self.transform.scale = clamp_scale(f);
                }
            }
        }
    }

    fn apply_command(&mut self, c: Command, placed: bool) {
        match c {
            Command::SetModeTranslate => self.modes.interaction = InteractionMode::Translate,
            Command::SetModeRotate => self.modes.interaction = InteractionMode::Rotate,
            Command::SetAxisX => self.modes.axis = Axis::X,
            Command::SetAxisY => self.modes.axis = Axis::Y,
            Command::SetAxisZ => self.modes.axis = Axis::Z,
            Command::Reset => {
                if placed {
                    self.transform = TransformState::default();
                }
            }
            Command::ToggleViewMode => {
                let target = match self.modes.view {
                    ViewMode::Tracking => ViewMode::Inspection,
                    ViewMode::Inspection => ViewMode::Tracking,
                };
                if let Err(e) = self.set_view_mode(target) {
                    log::warn!("ignoring TOGGLE_VIEW_MODE: {e}");
                }
            }
            Command::ToggleGizmo => self.modes.gizmo_visible = !self.modes.gizmo_visible,
        }
    }

    fn resolve_tap(&mut self, model_matrix: &Mat4, x: f64, y: f64) -> Vec<UiMessage> {
        let Some(scene) = self.scene.as_mut() else {
            return Vec::new();
        };
        let ray = match screen_to_world_ray(&self.config.camera, x, y) {
            Ok(r) => r,
            Err(e) => {
                log::warn!("ignoring tap: {e}");
                return Vec::new();
            }
        };
        let Some(hit) = pick(
            &ray,
            &scene.parts,
            model_matrix,
            self.config.max_pick_distance,
        ) else {
            return Vec::new();
        };
        select_part(&mut scene.parts, &scene.registry, &hit.name)
            .expect("picked part belongs to the model")
    }
}

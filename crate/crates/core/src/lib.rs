//! Camera-free engine for marker-based AR interaction.
//!
//! A marker pose (marker → camera) arrives every frame, either from a
//! recorded trace or a scripted orbit. User input (drags, pinches, taps and
//! toolbar commands) is queued by a producer and consumed by the frame loop,
//! which accumulates translate/rotate/scale state, compensates translations
//! for the marker's orientation relative to the viewer, and composes the final
//! model matrix. Taps are resolved against the posed model to select parts and
//! surface their registry info.
//!
//! Modules:
//!
//! - [`math`]: column-major `Mat4` and `Vec3`.
//! - [`orientation`]: camera extraction, orientation angle, quadrant remap.
//! - [`engine`]: the session state machine and frame loop.
//! - [`events`]: input events and their line grammar.
//! - [`scene`]: OBJ parts, ray picking, selection, parts registry.
//! - [`tracker`]: orbit pose source and pose trace files.

pub mod engine;
pub mod error;
pub mod events;
pub mod math;
pub mod orientation;
pub mod scene;
pub mod tracker;

pub use engine::{
    apply_touch_delta, compose_model_matrix, event_queue, Axis, EngineConfig, EventReceiver,
    EventSender, FrameOutput, Gains, InteractionMode, MarkerPose, Session, SessionModes,
    TransformState, ViewMode,
};
pub use error::{
    EngineError, LoadError, MathError, OrbitError, OrientationError, ParseError, SceneError,
};
pub use events::{Command, InputEvent, TimedEvent};
pub use math::{Mat4, Vec3};
pub use orientation::{OrientationQuadrant, OrientationState};
pub use scene::{Part, PartsRegistry, PickCamera, Scene, UiMessage};
pub use tracker::{OrbitScript, PoseSample};

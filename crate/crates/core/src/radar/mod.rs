//! FMCW radar observing a sound-driven vibrating surface.
//!
//! A loudspeaker's acoustic force drives a mass-spring-damper surface
//! ([`SurfaceMaterial`]); the resulting displacement modulates the phase of the
//! intermediate-frequency beat tone of every chirp ([`simulate_if_frames`]).
//! Duty-cycled hardware adds a spike at the start of the recording and at the
//! start of every frame ([`inject_artifacts`]).

mod artifacts;
mod capture;
mod config;
mod material;
mod simulate;

pub use artifacts::{inject_artifacts, ArtifactEntry, ArtifactKind, ArtifactLog};
pub use capture::{IfCapture, CAPTURE_MAGIC, CAPTURE_VERSION};
pub use config::{range_resolution, ChirpConfig, MAX_BANDWIDTH_HZ};
pub use material::{displacement_from_audio, forced_response_amplitude, SurfaceMaterial};
pub use simulate::{simulate_if_frames, SceneParams, VibrationTrace};

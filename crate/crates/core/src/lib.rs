//! Simulation and analysis toolkit for millimetre-wave vibration speech sensing.
//!
//! The crate is organised along the processing chain:
//!
//! * [`signal`]: shared time-frequency primitives (STFT, mel filterbanks,
//!   z-score normalisation, phase unwrapping, resampling).
//! * [`radar`]: a sound-driven mass-spring-damper surface observed by an FMCW
//!   radar, producing intermediate-frequency captures with hardware artifacts.
//! * [`extract`]: Range-FFT, target-bin phase tracking and the two-stage
//!   outlier preprocessing that recovers the vibration.
//! * [`synth`]: purple + Gaussian degradation of clean speech for building
//!   pretraining data.
//! * [`metrics`]: FWSegSNR, STOI, MCD, multi-resolution mel loss, magnitude L1
//!   and WER/CER.
//!
//! Everything is a pure function of its inputs and an explicit seed.

pub mod error;
pub mod extract;
pub mod io;
pub mod metrics;
pub mod radar;
pub mod rng;
pub mod signal;
pub mod speechlike;
pub mod synth;

pub use error::{Error, Result};
pub use extract::{extract_vibration, ExtractOptions, RangeProfile};
pub use metrics::MetricsReport;
pub use radar::{ChirpConfig, IfCapture, SurfaceMaterial, VibrationTrace};
pub use signal::{AudioBuffer, MelConfig, Spectrogram};
pub use synth::SynthesisConfig;

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

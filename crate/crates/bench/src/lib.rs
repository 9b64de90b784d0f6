//! Fixtures shared by the benchmarks.

use mmvib_core::radar::{displacement_from_audio, simulate_if_frames, ChirpConfig, SceneParams};
use mmvib_core::speechlike::{utterance, UtteranceSpec};
use mmvib_core::{AudioBuffer, IfCapture, SurfaceMaterial, SynthesisConfig};

/// Deterministic speech-like clip.
pub fn speech(seed: u64, duration_s: f64, sample_rate: f64) -> AudioBuffer {
    utterance(&UtteranceSpec { seed, duration_s, sample_rate, ..Default::default() })
}

/// Clean clip and its default mmWave-like degradation at 8 kHz.
pub fn degraded_pair(seed: u64, duration_s: f64) -> (AudioBuffer, AudioBuffer) {
    let clean = speech(seed, duration_s, 8000.0);
    let deg = mmvib_core::synth::synthesize_mmvib(&clean, &SynthesisConfig { seed, ..Default::default() })
        .expect("valid synthesis config");
    (mmvib_core::signal::zscore_normalize(&clean).expect("non-constant clip"), deg)
}

/// IF capture of a speech-like clip on a PET surface, default chirp config.
pub fn speech_capture(seed: u64, duration_s: f64) -> IfCapture {
    let cfg = ChirpConfig::default();
    let audio = speech(seed, duration_s, cfg.sampling_rate());
    let vib = displacement_from_audio(&audio, &SurfaceMaterial::pet(), 0.2).expect("valid material");
    simulate_if_frames(&cfg, &vib, &SceneParams::default(), seed).expect("valid scene")
}

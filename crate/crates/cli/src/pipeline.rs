//! Simulate → extract → score, shared by the commands and the sweep.

use anyhow::{Context, Result};
use mmvib_core::extract::{extract_vibration_with, Extraction};
use mmvib_core::metrics::score_pair;
use mmvib_core::radar::{displacement_from_audio, inject_artifacts, simulate_if_frames};
use mmvib_core::signal::{lowpass, resample, zscore_normalize};
use mmvib_core::{AudioBuffer, ExtractOptions, IfCapture, MetricsReport};

use crate::config::PipelineConfig;

/// `audio` at `rate`, resampled only when needed.
pub fn at_rate(audio: &AudioBuffer, rate: f64) -> Result<AudioBuffer> {
    if (audio.sample_rate() - rate).abs() <= 1e-9 * rate {
        Ok(audio.clone())
    } else {
        Ok(resample(audio, rate)?)
    }
}

/// Drives the surface with `audio`, observes it with the radar and adds the
/// configured artifacts. `audio` is resampled to the chirp rate first.
pub fn simulate(cfg: &PipelineConfig, audio: &AudioBuffer) -> Result<IfCapture> {
    let chirp = cfg.chirp_config();
    let drive = at_rate(audio, chirp.sampling_rate())?;
    let vib = displacement_from_audio(&drive, &cfg.material()?, cfg.material.force_scale_n)
        .context("material response")?;
    let cap = simulate_if_frames(&chirp, &vib, &cfg.scene()?, cfg.seed).context("radar simulation")?;
    Ok(inject_artifacts(&cap, cfg.artifacts.beginning_sigma, cfg.artifacts.periodic_sigma, cfg.seed)?)
}

pub fn extract(cap: &IfCapture, preprocess: bool) -> Result<Extraction> {
    Ok(extract_vibration_with(cap, &ExtractOptions { preprocess, ..Default::default() })?)
}

/// The source as a scoring reference: at `rate`, low-passed at the
/// configured cutoff (when below Nyquist).
pub fn reference(cfg: &PipelineConfig, source: &AudioBuffer, rate: f64) -> Result<AudioBuffer> {
    let r = at_rate(source, rate)?;
    if cfg.score.reference_cutoff_hz < rate / 2.0 {
        Ok(lowpass(&r, cfg.score.reference_cutoff_hz)?)
    } else {
        Ok(r)
    }
}

/// Scores a recovered or synthesised signal against a reference after
/// z-scoring both (displacement is in metres, audio in full-scale units).
pub fn score_normalized(reference: &AudioBuffer, estimate: &AudioBuffer) -> Result<MetricsReport> {
    let n = reference.len().min(estimate.len());
    let r = zscore_normalize(&reference.truncated(n))?;
    let e = zscore_normalize(&estimate.truncated(n))?;
    Ok(score_pair(&r, &e, None)?)
}

/// Full radar path for one source clip.
pub fn radar_round_trip(cfg: &PipelineConfig, source: &AudioBuffer) -> Result<(Extraction, MetricsReport)> {
    let cap = simulate(cfg, source)?;
    let ex = extract(&cap, true)?;
    let audio = ex.trace.clone().into_audio();
    let reference = reference(cfg, source, audio.sample_rate())?;
    let report = score_normalized(&reference, &audio)?;
    Ok((ex, report))
}

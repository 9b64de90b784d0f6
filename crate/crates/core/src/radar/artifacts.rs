use num_complex::Complex32;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::IfCapture;
use crate::error::{Error, Result};
use crate::extract::{extract_phase_series, range_fft, select_target_bin};
use crate::rng::rng_for;
use crate::signal::mean_and_std;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArtifactKind {
    /// Spike on the very first chirp of the recording.
    Beginning,
    /// Spike on the first chirp of a frame, caused by duty cycling.
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArtifactEntry {
    pub kind: ArtifactKind,
    pub frame: usize,
    pub chirp: usize,
    /// Signed phase offset applied to the chirp, radians.
    pub magnitude_rad: f64,
}

/// Record of injected outliers, written next to a capture as JSON.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ArtifactLog {
    /// Standard deviation of the clean target phase the magnitudes are
    /// expressed against, radians.
    pub sigma_rad: f64,
    pub entries: Vec<ArtifactEntry>,
}

impl ArtifactLog {
    pub fn positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.iter().map(|e| (e.frame, e.chirp))
    }
}

/// Standard deviation of the target-bin phase of `cap`, or 0 when nothing
/// reflects.
fn clean_phase_sigma(cap: &IfCapture) -> f64 {
    let profile = range_fft(cap);
    match select_target_bin(&profile) {
        Ok(bin) => extract_phase_series(&profile, bin)
            .map(|p| mean_and_std(&p).1)
            .unwrap_or(0.0),
        Err(_) => 0.0,
    }
}

/// Adds the hardware phase spikes: `beginning_sigma` σ on the first chirp of
/// the capture and `periodic_sigma` σ on chirp 0 of every frame.
///
/// σ is the standard deviation of the clean target phase, measured with a
/// dry extraction pass before anything is injected. Spikes are applied as a
/// rotation of the whole chirp. The beginning spike and the periodic train
/// each get one sign drawn from `seed`.
pub fn inject_artifacts(
    cap: &IfCapture,
    beginning_sigma: f64,
    periodic_sigma: f64,
    seed: u64,
) -> Result<IfCapture> {
    for (field, v) in [("beginning_sigma", beginning_sigma), ("periodic_sigma", periodic_sigma)] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::invalid(field, format!("{v} must be >= 0")));
        }
    }
    let mut out = cap.clone();
    if beginning_sigma == 0.0 && periodic_sigma == 0.0 {
        return Ok(out);
    }
    let sigma = clean_phase_sigma(cap);
    out.artifact_log.sigma_rad = sigma;
    let mut rng = rng_for(seed, u64::MAX);
    let mut sign = || if rng.random::<bool>() { 1.0 } else { -1.0 };

    let mut spikes = Vec::new();
    if beginning_sigma > 0.0 {
        spikes.push((ArtifactKind::Beginning, 0, sign() * beginning_sigma * sigma));
    }
    if periodic_sigma > 0.0 {
        // the duty-cycle transient repeats with the same polarity every frame
        let magnitude = sign() * periodic_sigma * sigma;
        for f in 0..cap.n_frames() {
            spikes.push((ArtifactKind::Periodic, f, magnitude));
        }
    }
    for (kind, frame, magnitude_rad) in spikes {
        let rot = Complex32::from_polar(1.0, magnitude_rad as f32);
        for z in out.chirp_mut(frame, 0) {
            *z *= rot;
        }
        out.artifact_log.entries.push(ArtifactEntry {
            kind,
            frame,
            chirp: 0,
            magnitude_rad,
        });
    }
    Ok(out)
}

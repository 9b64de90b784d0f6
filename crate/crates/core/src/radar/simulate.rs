use std::f64::consts::{PI, TAU};

use num_complex::Complex32;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ArtifactLog, ChirpConfig, IfCapture};
use crate::error::{Error, Result};
use crate::rng::rng_for;

/// Surface displacement sampled once per chirp.
#[derive(Debug, Clone, PartialEq)]
pub struct VibrationTrace {
    displacement: Vec<f64>,
    sample_rate: f64,
}

impl VibrationTrace {
    pub fn new(displacement: Vec<f64>, sample_rate: f64) -> Result<Self> {
        if !(sample_rate.is_finite() && sample_rate > 0.0) {
            return Err(Error::invalid("sample_rate", format!("{sample_rate} must be > 0")));
        }
        if let Some(i) = displacement.iter().position(|d| !d.is_finite()) {
            return Err(Error::invalid("displacement", format!("sample {i} is not finite")));
        }
        Ok(Self {
            displacement,
            sample_rate,
        })
    }

    /// Metres.
    pub fn displacement(&self) -> &[f64] {
        &self.displacement
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.displacement.len()
    }

    pub fn is_empty(&self) -> bool {
        self.displacement.is_empty()
    }

    pub fn peak(&self) -> f64 {
        self.displacement.iter().fold(0.0, |m, d| m.max(d.abs()))
    }

    pub fn into_audio(self) -> crate::signal::AudioBuffer {
        crate::signal::AudioBuffer::new(self.displacement, self.sample_rate)
            .expect("trace invariants match audio invariants")
    }
}

/// Geometry and channel quality of a single static scatterer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SceneParams {
    /// Radar-to-surface distance, metres.
    pub range_m: f64,
    /// Return amplitude, `[0, 1]`.
    pub reflectivity: f64,
    /// Per-sample complex noise power relative to a unit-amplitude return, dB.
    /// `-inf` disables noise.
    pub noise_floor_db: f64,
}

impl Default for SceneParams {
    fn default() -> Self {
        Self {
            range_m: 1.5,
            reflectivity: 0.9,
            noise_floor_db: -60.0,
        }
    }
}

/// Generates the IF samples of every chirp for a surface at `scene.range_m`
/// moving by `vib`.
///
/// Chirp `j` (frame-major) observes displacement sample `j`. Its IF vector is
/// a complex tone at the beat frequency `2 slope R / c` whose phase is
/// `4π (R + Δd_j) / λ`, plus circular Gaussian noise. Only whole frames are
/// generated; trailing displacement samples are dropped.
pub fn simulate_if_frames(
    cfg: &ChirpConfig,
    vib: &VibrationTrace,
    scene: &SceneParams,
    seed: u64,
) -> Result<IfCapture> {
    cfg.validate()?;
    let fs = cfg.sampling_rate();
    if (vib.sample_rate() - fs).abs() > 1e-9 * fs {
        return Err(Error::SampleRateMismatch(vib.sample_rate(), fs));
    }
    let max_range = cfg.max_unambiguous_range();
    if !(scene.range_m > 0.0 && scene.range_m < max_range) {
        return Err(Error::RangeAliasing {
            range_m: scene.range_m,
            max_range_m: max_range,
        });
    }
    if !(0.0..=1.0).contains(&scene.reflectivity) {
        return Err(Error::invalid("reflectivity", format!("{} must lie in [0, 1]", scene.reflectivity)));
    }
    if scene.noise_floor_db.is_nan() || scene.noise_floor_db == f64::INFINITY {
        return Err(Error::invalid("noise_floor_db", "must be finite or -inf"));
    }
    let lambda = cfg.wavelength();
    if vib.peak() >= lambda / 4.0 {
        return Err(Error::invalid(
            "vibration",
            format!("peak displacement {} m leaves the small-vibration regime (< λ/4 = {} m)", vib.peak(), lambda / 4.0),
        ));
    }
    let cpf = cfg.chirps_per_frame;
    let n_frames = vib.len() / cpf;
    if n_frames == 0 {
        return Err(Error::InputTooShort(format!(
            "{} displacement samples do not fill one {cpf}-chirp frame",
            vib.len()
        )));
    }

    let n_adc = cfg.adc_samples_per_chirp;
    // beat frequency expressed in Range-FFT bins
    let beat_bins = scene.range_m / cfg.range_resolution();
    let step = TAU * beat_bins / n_adc as f64;
    let amp = scene.reflectivity;
    let noise_std = (10f64.powf(scene.noise_floor_db / 10.0) / 2.0).sqrt();
    let base_phase = (4.0 * PI * scene.range_m / lambda).rem_euclid(TAU);
    let disp = vib.displacement();

    let mut data = vec![Complex32::new(0.0, 0.0); n_frames * cpf * n_adc];
    data.par_chunks_mut(cpf * n_adc).enumerate().for_each(|(f, frame)| {
        let mut rng = rng_for(seed, f as u64);
        for (c, chirp) in frame.chunks_mut(n_adc).enumerate() {
            let phi = base_phase + 4.0 * PI * disp[f * cpf + c] / lambda;
            for (n, s) in chirp.iter_mut().enumerate() {
                let (sin, cos) = (step * n as f64 + phi).sin_cos();
                let (mut re, mut im) = (amp * cos, amp * sin);
                if noise_std > 0.0 {
                    re += noise_std * rng.sample::<f64, _>(StandardNormal);
                    im += noise_std * rng.sample::<f64, _>(StandardNormal);
                }
                *s = Complex32::new(re as f32, im as f32);
            }
        }
    });
    IfCapture::from_parts(*cfg, n_frames, data, ArtifactLog::default(), seed)
}

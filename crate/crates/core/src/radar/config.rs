use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::SPEED_OF_LIGHT;

/// Largest sweep the modelled radar supports (60-64 GHz band).
pub const MAX_BANDWIDTH_HZ: f64 = 4.0e9;

/// FMCW waveform timing.
///
/// `chirps_per_frame / frame_period` is the rate at which the surface
/// displacement is sampled. The defaults reproduce an 8 kHz vibration rate
/// (256 chirps in a 32 ms frame) with a 4 GHz sweep starting at 60 GHz and a
/// 10 % inter-frame idle gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChirpConfig {
    /// Start of the sweep, Hz.
    pub carrier_freq: f64,
    /// Hz/s.
    pub slope: f64,
    /// Seconds.
    pub chirp_duration: f64,
    pub adc_samples_per_chirp: usize,
    pub chirps_per_frame: usize,
    /// Seconds.
    pub frame_period: f64,
}

impl Default for ChirpConfig {
    fn default() -> Self {
        let frame_period = 0.032;
        let chirps_per_frame = 256;
        let chirp_duration = 0.9 * frame_period / chirps_per_frame as f64;
        Self {
            carrier_freq: 60.0e9,
            slope: MAX_BANDWIDTH_HZ / chirp_duration,
            chirp_duration,
            adc_samples_per_chirp: 128,
            chirps_per_frame,
            frame_period,
        }
    }
}

impl ChirpConfig {
    pub fn bandwidth(&self) -> f64 {
        self.slope * self.chirp_duration
    }

    /// Chirps per second, i.e. the vibration sampling rate in Hz.
    pub fn sampling_rate(&self) -> f64 {
        self.chirps_per_frame as f64 / self.frame_period
    }

    pub fn frame_rate(&self) -> f64 {
        1.0 / self.frame_period
    }

    /// Wavelength at the start of the sweep.
    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_freq
    }

    pub fn range_resolution(&self) -> f64 {
        range_resolution(self)
    }

    /// ADC rate implied by spreading the samples over the whole chirp.
    pub fn adc_sample_rate(&self) -> f64 {
        self.adc_samples_per_chirp as f64 / self.chirp_duration
    }

    pub fn range_bins(&self) -> usize {
        self.adc_samples_per_chirp / 2 + 1
    }

    /// Ranges at or beyond the last kept Range-FFT bin alias.
    pub fn max_unambiguous_range(&self) -> f64 {
        (self.adc_samples_per_chirp / 2) as f64 * self.range_resolution()
    }

    /// Idle time between the last chirp of a frame and the next frame.
    pub fn inter_frame_gap(&self) -> f64 {
        self.frame_period - self.chirps_per_frame as f64 * self.chirp_duration
    }

    /// Same frame period, slope and duty cycle with `n` chirps per frame.
    ///
    /// Chirps shorten in proportion, so the swept bandwidth (and with it the
    /// range resolution) changes by `old / n`.
    pub fn with_chirps_per_frame(&self, n: usize) -> Self {
        let scale = self.chirps_per_frame as f64 / n as f64;
        Self {
            chirps_per_frame: n,
            chirp_duration: self.chirp_duration * scale,
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |field: &'static str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::invalid(field, format!("{v} must be a positive finite number")))
            }
        };
        positive("carrier_freq", self.carrier_freq)?;
        positive("slope", self.slope)?;
        positive("chirp_duration", self.chirp_duration)?;
        positive("frame_period", self.frame_period)?;
        if self.adc_samples_per_chirp < 4 {
            return Err(Error::invalid("adc_samples_per_chirp", "must be >= 4"));
        }
        if self.chirps_per_frame < 2 {
            return Err(Error::invalid("chirps_per_frame", "must be >= 2"));
        }
        let active = self.chirps_per_frame as f64 * self.chirp_duration;
        if active > self.frame_period * (1.0 + 1e-9) {
            return Err(Error::invalid(
                "chirp_duration",
                format!(
                    "{} chirps of {} s ({active} s) do not fit in a {} s frame",
                    self.chirps_per_frame, self.chirp_duration, self.frame_period
                ),
            ));
        }
        if self.bandwidth() > MAX_BANDWIDTH_HZ * (1.0 + 1e-9) {
            return Err(Error::invalid(
                "slope",
                format!("swept bandwidth {} Hz exceeds {MAX_BANDWIDTH_HZ} Hz", self.bandwidth()),
            ));
        }
        Ok(())
    }
}

/// Range resolution `c / (2 B)` with `B = slope * chirp_duration`.
pub fn range_resolution(cfg: &ChirpConfig) -> f64 {
    SPEED_OF_LIGHT / (2.0 * cfg.slope * cfg.chirp_duration)
}

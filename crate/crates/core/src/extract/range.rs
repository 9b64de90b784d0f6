use std::f64::consts::PI;

use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::radar::IfCapture;
use crate::signal::{mean_and_std, unwrap_phase};

/// Range-FFT output, `[range_bins, total_chirps]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeProfile {
    pub bins: Array2<Complex64>,
    /// Metres per range bin.
    pub bin_size_m: f64,
}

impl RangeProfile {
    pub fn range_bins(&self) -> usize {
        self.bins.nrows()
    }

    pub fn total_chirps(&self) -> usize {
        self.bins.ncols()
    }

    /// Mean magnitude of each range bin across all chirps.
    pub fn mean_magnitude(&self) -> Vec<f64> {
        self.bins
            .rows()
            .into_iter()
            .map(|row| row.iter().map(|z| z.norm()).sum::<f64>() / row.len().max(1) as f64)
            .collect()
    }
}

/// Fast-time FFT of every chirp, keeping `adc_samples / 2 + 1` bins.
/// Columns follow acquisition order across frames.
pub fn range_fft(cap: &IfCapture) -> RangeProfile {
    let cfg = cap.config();
    let n = cfg.adc_samples_per_chirp;
    let keep = cfg.range_bins();
    let fft = FftPlanner::<f64>::new().plan_fft_forward(n);
    let columns: Vec<Vec<Complex64>> = cap
        .chirps()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|chirp| {
            let mut buf: Vec<Complex64> = chirp
                .iter()
                .map(|z| Complex64::new(z.re as f64, z.im as f64))
                .collect();
            fft.process(&mut buf);
            buf.truncate(keep);
            buf
        })
        .collect();
    let mut bins = Array2::zeros((keep, columns.len()));
    for (t, col) in columns.iter().enumerate() {
        for (k, z) in col.iter().enumerate() {
            bins[[k, t]] = *z;
        }
    }
    RangeProfile {
        bins,
        bin_size_m: cfg.range_resolution(),
    }
}

/// Bin with the largest mean magnitude, DC excluded; ties go to the lower
/// index.
pub fn select_target_bin(profile: &RangeProfile) -> Result<usize> {
    let mags = profile.mean_magnitude();
    let mut best: Option<(usize, f64)> = None;
    for (k, &m) in mags.iter().enumerate().skip(1) {
        if m > best.map_or(0.0, |b| b.1) {
            best = Some((k, m));
        }
    }
    best.map(|b| b.0).ok_or(Error::NoTarget)
}

/// Unwrapped phase of `bin` at every chirp.
pub fn extract_phase_series(profile: &RangeProfile, bin: usize) -> Result<Vec<f64>> {
    if bin >= profile.range_bins() {
        return Err(Error::invalid(
            "bin",
            format!("{bin} is outside the {} range bins", profile.range_bins()),
        ));
    }
    let raw: Vec<f64> = profile.bins.row(bin).iter().map(|z| z.arg()).collect();
    Ok(unwrap_phase(&raw))
}

/// `Δd = λ Δφ / (4π)` after removing the mean phase.
pub fn phase_to_displacement(phase: &[f64], wavelength: f64) -> Result<Vec<f64>> {
    if !(wavelength.is_finite() && wavelength > 0.0) {
        return Err(Error::invalid("wavelength", format!("{wavelength} must be > 0")));
    }
    let (mean, _) = mean_and_std(phase);
    let k = wavelength / (4.0 * PI);
    Ok(phase.iter().map(|p| (p - mean) * k).collect())
}

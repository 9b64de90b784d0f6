use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::signal::align_pair;
use crate::signal::AudioBuffer;

pub const FWSEG_MIN_DB: f64 = -10.0;
pub const FWSEG_MAX_DB: f64 = 35.0;
const GAMMA: f64 = 0.2;

#[rustfmt::skip]
const CENT_FREQ: [f64; 25] = [
    50.0, 120.0, 190.0, 260.0, 330.0, 400.0, 470.0, 540.0, 617.372, 703.378,
    798.717, 904.128, 1020.38, 1148.30, 1288.72, 1442.54, 1610.70, 1794.16,
    1993.93, 2211.08, 2446.71, 2701.97, 2978.04, 3276.17, 3597.63,
];

#[rustfmt::skip]
const BANDWIDTH: [f64; 25] = [
    70.0, 70.0, 70.0, 70.0, 70.0, 70.0, 70.0, 77.3724, 86.0056, 95.3398,
    105.411, 116.256, 127.914, 140.423, 153.823, 168.154, 183.457, 199.776,
    217.153, 235.631, 255.255, 276.072, 298.126, 321.465, 346.136,
];

/// Gaussian-shaped critical-band weights, `[25][n_fft / 2]`.
fn critical_filters(n_fft: usize, sample_rate: f64) -> Vec<Vec<f64>> {
    let half = n_fft / 2;
    let max_freq = sample_rate / 2.0;
    let min_factor = (-30.0 / (2.0 * 2.303f64)).exp();
    CENT_FREQ
        .iter()
        .zip(BANDWIDTH)
        .map(|(&cf, bw_hz)| {
            let f0 = (cf / max_freq * half as f64).floor();
            let bw = bw_hz / max_freq * half as f64;
            let norm = BANDWIDTH[0].ln() - bw_hz.ln();
            (0..half)
                .map(|j| {
                    let v = (-11.0 * ((j as f64 - f0) / bw).powi(2) + norm).exp();
                    if v > min_factor { v } else { 0.0 }
                })
                .collect()
        })
        .collect()
}

struct FrameSpectrum {
    window: Vec<f64>,
    fft: Arc<dyn Fft<f64>>,
    buf: Vec<Complex64>,
}

impl FrameSpectrum {
    /// Magnitude of the first `n_fft / 2` bins, normalised to unit sum.
    fn normalized(&mut self, frame: &[f64], out: &mut [f64]) {
        self.buf.iter_mut().for_each(|z| *z = Complex64::default());
        for ((z, &x), &w) in self.buf.iter_mut().zip(frame).zip(&self.window) {
            z.re = x * w;
        }
        self.fft.process(&mut self.buf);
        for (o, z) in out.iter_mut().zip(&self.buf) {
            *o = z.norm();
        }
        let total: f64 = out.iter().sum();
        if total > 0.0 {
            out.iter_mut().for_each(|v| *v /= total);
        }
    }
}

/// Frequency-weighted segmental SNR in dB.
///
/// 25 ms Hann frames with a 10 ms hop; the magnitude spectrum of each frame
/// is normalised to unit sum, pooled into 25 critical bands, and the per-band
/// SNRs are averaged with weights `|ref band|^0.2`. Per-frame values are
/// clamped to [[`FWSEG_MIN_DB`], [`FWSEG_MAX_DB`]]. Frames where the reference
/// is exactly zero carry no weight and are skipped.
pub fn fwsegsnr(reference: &AudioBuffer, degraded: &AudioBuffer) -> Result<f64> {
    let (r, d) = align_pair(reference, degraded)?;
    let fs = r.sample_rate();
    let win = (0.025 * fs).round() as usize;
    let hop = (0.010 * fs).round() as usize;
    if r.len() < win || win < 2 {
        return Err(Error::InputTooShort(format!(
            "FWSegSNR needs at least {win} samples, got {}",
            r.len()
        )));
    }
    let n_fft = (2 * win).next_power_of_two();
    let half = n_fft / 2;
    let filters = critical_filters(n_fft, fs);
    let mut spec = FrameSpectrum {
        window: (1..=win)
            .map(|i| 0.5 * (1.0 - (std::f64::consts::TAU * i as f64 / (win + 1) as f64).cos()))
            .collect(),
        fft: FftPlanner::new().plan_fft_forward(n_fft),
        buf: vec![Complex64::default(); n_fft],
    };
    let (mut cs, mut ps) = (vec![0.0; half], vec![0.0; half]);
    let mut total = 0.0;
    let mut frames = 0usize;
    for start in (0..=r.len() - win).step_by(hop) {
        spec.normalized(&r.samples()[start..start + win], &mut cs);
        spec.normalized(&d.samples()[start..start + win], &mut ps);
        let (mut num, mut den) = (0.0, 0.0);
        for f in &filters {
            let ce: f64 = f.iter().zip(&cs).map(|(a, b)| a * b).sum();
            let pe: f64 = f.iter().zip(&ps).map(|(a, b)| a * b).sum();
            let err = (ce - pe).powi(2).max(f64::EPSILON);
            let w = ce.powf(GAMMA);
            num += w * 10.0 * (ce * ce / err).log10();
            den += w;
        }
        if den > 0.0 {
            total += (num / den).clamp(FWSEG_MIN_DB, FWSEG_MAX_DB);
            frames += 1;
        }
    }
    if frames == 0 {
        return Err(Error::DegenerateNormalization);
    }
    Ok(total / frames as f64)
}

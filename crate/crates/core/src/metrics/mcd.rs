use std::f64::consts::{LN_10, PI};

use ndarray::Array2;
use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::signal::{align_pair, mel_filterbank, AudioBuffer};

const N_FILTERS: usize = 26;
const N_CEPS: usize = 13;
const ENERGY_FLOOR: f64 = 1e-30;

/// `c_n = (1/K) sum_k x_k cos(pi n (k + 1/2) / K)` for n = 0..=13.
fn cepstrum(log_spectrum: &[f64]) -> [f64; N_CEPS + 1] {
    let k = log_spectrum.len() as f64;
    std::array::from_fn(|n| {
        log_spectrum
            .iter()
            .enumerate()
            .map(|(b, v)| v * (PI * n as f64 * (b as f64 + 0.5) / k).cos())
            .sum::<f64>()
            / k
    })
}

/// Mel cepstra `[frames, 14]` (c0..c13): 25 ms Hamming frames, 10 ms hop,
/// power spectrum through a 26-band HTK mel bank, natural log, then
/// `c_n = (1/K) sum_k ln P_k cos(pi n (k + 1/2) / K)`.
///
/// With this scaling `ln P_k ≈ c_0 + 2 sum_n c_n cos(...)`, which is the
/// cepstrum the distortion constant `10 / ln 10 * sqrt(2 ...)` is defined for.
pub fn mfcc(audio: &AudioBuffer) -> Result<Array2<f64>> {
    let fs = audio.sample_rate();
    let win = (0.025 * fs).round() as usize;
    let hop = (0.010 * fs).round() as usize;
    if audio.len() < win || win < 2 {
        return Err(Error::InputTooShort(format!("MFCC needs at least {win} samples, got {}", audio.len())));
    }
    let n_fft = win.next_power_of_two();
    let bank = mel_filterbank(N_FILTERS, n_fft, fs, 0.0, fs / 2.0);
    let window: Vec<f64> = (0..win)
        .map(|i| 0.54 - 0.46 * (2.0 * PI * i as f64 / (win - 1) as f64).cos())
        .collect();
    let fft = FftPlanner::new().plan_fft_forward(n_fft);
    let n_frames = (audio.len() - win) / hop + 1;
    let mut out = Array2::zeros((n_frames, N_CEPS + 1));
    let mut buf = vec![Complex64::default(); n_fft];
    let mut power = vec![0.0; n_fft / 2 + 1];
    let mut mel = vec![0.0; N_FILTERS];
    for t in 0..n_frames {
        buf.iter_mut().for_each(|z| *z = Complex64::default());
        let frame = &audio.samples()[t * hop..t * hop + win];
        for ((z, &x), &w) in buf.iter_mut().zip(frame).zip(&window) {
            z.re = x * w;
        }
        fft.process(&mut buf);
        for (p, z) in power.iter_mut().zip(&buf) {
            *p = z.norm_sqr();
        }
        bank.apply_frame(&power, &mut mel);
        let logmel: Vec<f64> = mel.iter().map(|e| e.max(ENERGY_FLOOR).ln()).collect();
        for (o, c) in out.row_mut(t).iter_mut().zip(cepstrum(&logmel)) {
            *o = c;
        }
    }
    Ok(out)
}

/// Mel-cepstral distortion in dB over c1..c13, frames aligned index to index:
/// mean of `(10 / ln 10) * sqrt(2 * sum (c_i - c'_i)^2)`, the RMS difference
/// of the cepstrally smoothed mel power spectra with the level removed.
pub fn mcd(reference: &AudioBuffer, degraded: &AudioBuffer) -> Result<f64> {
    let (r, d) = align_pair(reference, degraded)?;
    let (a, b) = (mfcc(&r)?, mfcc(&d)?);
    let k = 10.0 / LN_10 * 2f64.sqrt();
    let total: f64 = a
        .outer_iter()
        .zip(b.outer_iter())
        .map(|(x, y)| {
            let ss: f64 = (1..=N_CEPS).map(|i| (x[i] - y[i]).powi(2)).sum();
            k * ss.sqrt()
        })
        .sum();
    Ok(total / a.nrows() as f64)
}

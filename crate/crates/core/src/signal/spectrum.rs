//! Spectral measurements used to check simulated and recovered signals.

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::hann_window;

/// One-sided windowed DFT of the whole signal.
pub fn windowed_spectrum(x: &[f64]) -> Vec<Complex64> {
    let n = x.len();
    let w = hann_window(n);
    let mut buf: Vec<Complex64> = x.iter().zip(&w).map(|(v, w)| Complex64::new(v * w, 0.0)).collect();
    FftPlanner::<f64>::new().plan_fft_forward(n).process(&mut buf);
    buf.truncate(n / 2 + 1);
    buf
}

/// A single spectral line found in a signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tone {
    pub frequency: f64,
    /// Peak amplitude of the sinusoid, independent of where it falls between bins.
    pub amplitude: f64,
    /// Bin spacing of the analysis, Hz.
    pub resolution: f64,
}

/// Strongest non-DC line of `x`, with its amplitude integrated over the Hann
/// main lobe (Parseval) so that scalloping does not bias it.
pub fn dominant_tone(x: &[f64], sample_rate: f64) -> Option<Tone> {
    let n = x.len();
    if n < 8 {
        return None;
    }
    let spec = windowed_spectrum(x);
    let peak = (1..spec.len()).max_by(|&a, &b| spec[a].norm_sqr().total_cmp(&spec[b].norm_sqr()))?;
    let lo = peak.saturating_sub(4).max(1);
    let hi = (peak + 4).min(spec.len() - 1);
    let lobe: f64 = spec[lo..=hi].iter().map(|z| z.norm_sqr()).sum();
    let w2: f64 = hann_window(n).iter().map(|w| w * w).sum();
    Some(Tone {
        frequency: peak as f64 * sample_rate / n as f64,
        amplitude: 2.0 * (lobe / (n as f64 * w2)).sqrt(),
        resolution: sample_rate / n as f64,
    })
}

/// Welch power spectral density (Hann segments, 50 % overlap), one-sided.
///
/// Returns `(frequencies, density)` with density in units²/Hz.
pub fn welch_psd(x: &[f64], sample_rate: f64, segment_len: usize) -> (Vec<f64>, Vec<f64>) {
    let seg = segment_len.min(x.len()).max(2);
    let hop = seg / 2;
    let w = hann_window(seg);
    let w2: f64 = w.iter().map(|v| v * v).sum();
    let fft = FftPlanner::<f64>::new().plan_fft_forward(seg);
    let bins = seg / 2 + 1;
    let mut acc = vec![0.0; bins];
    let mut count = 0usize;
    let mut buf = vec![Complex64::new(0.0, 0.0); seg];
    let mut start = 0;
    while start + seg <= x.len() {
        for (b, (v, wi)) in buf.iter_mut().zip(x[start..start + seg].iter().zip(&w)) {
            *b = Complex64::new(v * wi, 0.0);
        }
        fft.process(&mut buf);
        for (a, z) in acc.iter_mut().zip(&buf) {
            *a += z.norm_sqr();
        }
        count += 1;
        start += hop;
    }
    let scale = 1.0 / (sample_rate * w2 * count.max(1) as f64);
    let psd = acc
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let one_sided = if k == 0 || (seg % 2 == 0 && k == seg / 2) { 1.0 } else { 2.0 };
            a * scale * one_sided
        })
        .collect();
    let freqs = (0..bins).map(|k| k as f64 * sample_rate / seg as f64).collect();
    (freqs, psd)
}

/// Sum of `psd` over frequencies in `[lo, hi)`.
pub fn band_power(freqs: &[f64], psd: &[f64], lo: f64, hi: f64) -> f64 {
    freqs
        .iter()
        .zip(psd)
        .filter(|(f, _)| **f >= lo && **f < hi)
        .map(|(_, p)| p)
        .sum()
}

/// Least-squares slope of `10 log10(psd)` against `log10(f)` over `[lo, hi]`,
/// in dB per decade.
pub fn log_log_slope(freqs: &[f64], psd: &[f64], lo: f64, hi: f64) -> f64 {
    let pts: Vec<(f64, f64)> = freqs
        .iter()
        .zip(psd)
        .filter(|(f, p)| **f >= lo && **f <= hi && **p > 0.0)
        .map(|(f, p)| (f.log10(), 10.0 * p.log10()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

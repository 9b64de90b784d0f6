use ndarray::Array2;

use super::{stft, AudioBuffer, Spectrogram};
use crate::error::{Error, Result};

/// HTK mel scale: `2595 log10(1 + f / 700)`.
pub fn hz_to_mel(f: f64) -> f64 {
    2595.0 * (1.0 + f / 700.0).log10()
}

pub fn mel_to_hz(m: f64) -> f64 {
    700.0 * (10f64.powf(m / 2595.0) - 1.0)
}

/// Parameters of one mel spectrogram resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MelConfig {
    pub n_mels: usize,
    pub window_len: usize,
    pub hop: usize,
    pub fmin: f64,
    pub fmax: f64,
}

impl MelConfig {
    /// Band count and window length with the default hop (a quarter window)
    /// and the full `[0, sample_rate / 2]` band.
    pub fn new(n_mels: usize, window_len: usize, sample_rate: f64) -> Self {
        Self {
            n_mels,
            window_len,
            hop: (window_len / 4).max(1),
            fmin: 0.0,
            fmax: sample_rate / 2.0,
        }
    }

    /// The seven resolutions of the multi-resolution mel loss: 5..320 bands
    /// paired with 32..2048-sample windows.
    pub fn multi_resolution(sample_rate: f64) -> [MelConfig; 7] {
        const BANDS: [usize; 7] = [5, 10, 20, 40, 80, 160, 320];
        const WINDOWS: [usize; 7] = [32, 64, 128, 256, 512, 1024, 2048];
        std::array::from_fn(|j| MelConfig::new(BANDS[j], WINDOWS[j], sample_rate))
    }

    pub fn freq_bins(&self) -> usize {
        self.window_len / 2 + 1
    }

    pub fn validate(&self, sample_rate: f64) -> Result<()> {
        if self.n_mels == 0 {
            return Err(Error::invalid("n_mels", "must be >= 1"));
        }
        if self.window_len < 2 {
            return Err(Error::invalid("window_len", "must be >= 2"));
        }
        if self.hop == 0 {
            return Err(Error::invalid("hop", "must be >= 1"));
        }
        let nyquist = sample_rate / 2.0;
        if !(self.fmin >= 0.0 && self.fmin < self.fmax && self.fmax <= nyquist * (1.0 + 1e-12)) {
            return Err(Error::invalid(
                "fmin/fmax",
                format!(
                    "need 0 <= fmin < fmax <= {nyquist} Hz, got [{}, {}]",
                    self.fmin, self.fmax
                ),
            ));
        }
        if self.n_mels > self.freq_bins() {
            return Err(Error::OverResolvedFilterbank {
                n_mels: self.n_mels,
                freq_bins: self.freq_bins(),
            });
        }
        Ok(())
    }
}

/// Triangular HTK filterbank stored sparsely, one row per mel band.
#[derive(Debug, Clone)]
pub struct MelFilterbank {
    rows: Vec<(usize, Vec<f64>)>,
    freq_bins: usize,
}

impl MelFilterbank {
    pub fn n_mels(&self) -> usize {
        self.rows.len()
    }

    pub fn freq_bins(&self) -> usize {
        self.freq_bins
    }

    /// Dense `[n_mels, freq_bins]` copy of the weights.
    pub fn to_dense(&self) -> Array2<f64> {
        let mut out = Array2::zeros((self.rows.len(), self.freq_bins));
        for (m, (start, w)) in self.rows.iter().enumerate() {
            for (i, v) in w.iter().enumerate() {
                out[[m, start + i]] = *v;
            }
        }
        out
    }

    /// Weighted sum of `spectrum` (length `freq_bins`) for every band.
    pub fn apply_frame(&self, spectrum: &[f64], out: &mut [f64]) {
        for ((start, w), o) in self.rows.iter().zip(out.iter_mut()) {
            *o = w.iter().zip(&spectrum[*start..]).map(|(a, b)| a * b).sum();
        }
    }

    /// Applies the bank to every frame of a `[freq_bins, frames]` matrix.
    pub fn apply(&self, spec: &Array2<f64>) -> Array2<f64> {
        let frames = spec.ncols();
        let mut out = Array2::zeros((self.rows.len(), frames));
        for (m, (start, w)) in self.rows.iter().enumerate() {
            for t in 0..frames {
                let mut acc = 0.0;
                for (i, wi) in w.iter().enumerate() {
                    acc += wi * spec[[start + i, t]];
                }
                out[[m, t]] = acc;
            }
        }
        out
    }
}

/// Builds `n_mels` triangles equally spaced on the mel scale between `fmin`
/// and `fmax` for an `n_fft`-point transform at `sample_rate`. Peaks are 1.
pub fn mel_filterbank(
    n_mels: usize,
    n_fft: usize,
    sample_rate: f64,
    fmin: f64,
    fmax: f64,
) -> MelFilterbank {
    let freq_bins = n_fft / 2 + 1;
    let (mlo, mhi) = (hz_to_mel(fmin), hz_to_mel(fmax));
    let edges: Vec<f64> = (0..n_mels + 2)
        .map(|i| mel_to_hz(mlo + (mhi - mlo) * i as f64 / (n_mels + 1) as f64))
        .collect();
    let bin_hz = sample_rate / n_fft as f64;
    let rows = (0..n_mels)
        .map(|m| {
            let (lo, mid, hi) = (edges[m], edges[m + 1], edges[m + 2]);
            let weights: Vec<(usize, f64)> = (0..freq_bins)
                .filter_map(|k| {
                    let f = k as f64 * bin_hz;
                    let w = ((f - lo) / (mid - lo)).min((hi - f) / (hi - mid));
                    (w > 0.0).then_some((k, w))
                })
                .collect();
            match weights.first() {
                Some(&(start, _)) => (start, weights.iter().map(|&(_, w)| w).collect()),
                None => (0, Vec::new()),
            }
        })
        .collect();
    MelFilterbank { rows, freq_bins }
}

/// Mel-weighted magnitude STFT, `[n_mels, time_frames]`.
pub fn mel_spectrogram(audio: &AudioBuffer, cfg: &MelConfig) -> Result<Array2<f64>> {
    cfg.validate(audio.sample_rate())?;
    let bank = mel_filterbank(cfg.n_mels, cfg.window_len, audio.sample_rate(), cfg.fmin, cfg.fmax);
    let mag: Spectrogram<f64> = stft(audio, cfg.window_len, cfg.hop)?.magnitude();
    Ok(bank.apply(&mag.values))
}

use std::f64::consts::TAU;

use ndarray::Array2;
use num_complex::Complex64;
use rustfft::FftPlanner;

use super::AudioBuffer;
use crate::error::{Error, Result};

/// Time-frequency matrix laid out `[freq_bins, time_frames]`.
///
/// `T` is [`Complex64`] straight out of [`stft`] and `f64` once reduced with
/// [`Spectrogram::magnitude`].
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrogram<T = Complex64> {
    pub values: Array2<T>,
    pub window_len: usize,
    pub hop: usize,
    pub sample_rate: f64,
}

impl<T> Spectrogram<T> {
    pub fn freq_bins(&self) -> usize {
        self.values.nrows()
    }

    pub fn time_frames(&self) -> usize {
        self.values.ncols()
    }

    /// Centre frequency of bin `k` in Hz.
    pub fn bin_frequency(&self, k: usize) -> f64 {
        k as f64 * self.sample_rate / self.window_len as f64
    }
}

impl Spectrogram<Complex64> {
    pub fn magnitude(&self) -> Spectrogram<f64> {
        Spectrogram {
            values: self.values.mapv(|z| z.norm()),
            window_len: self.window_len,
            hop: self.hop,
            sample_rate: self.sample_rate,
        }
    }
}

/// Periodic Hann window, `0.5 - 0.5 cos(2πn/N)`.
pub fn hann_window(len: usize) -> Vec<f64> {
    (0..len)
        .map(|n| 0.5 - 0.5 * (TAU * n as f64 / len as f64).cos())
        .collect()
}

/// Short-time Fourier transform with a periodic Hann window.
///
/// No padding: `floor((len - window_len) / hop) + 1` frames, trailing samples
/// that do not fill a window are dropped. Only the non-negative frequencies
/// (`window_len / 2 + 1` bins) are kept.
pub fn stft(audio: &AudioBuffer, window_len: usize, hop: usize) -> Result<Spectrogram> {
    if window_len == 0 {
        return Err(Error::invalid("window_len", "must be >= 1"));
    }
    if hop == 0 {
        return Err(Error::invalid("hop", "must be >= 1"));
    }
    let x = audio.samples();
    if x.len() < window_len {
        return Err(Error::InputTooShort(format!(
            "{} samples cannot fill one {window_len}-sample window",
            x.len()
        )));
    }
    let frames = (x.len() - window_len) / hop + 1;
    let bins = window_len / 2 + 1;
    let window = hann_window(window_len);
    let fft = FftPlanner::<f64>::new().plan_fft_forward(window_len);

    let mut values = Array2::<Complex64>::zeros((bins, frames));
    let mut buf = vec![Complex64::new(0.0, 0.0); window_len];
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    for t in 0..frames {
        let start = t * hop;
        for (b, (s, w)) in buf.iter_mut().zip(x[start..start + window_len].iter().zip(&window)) {
            *b = Complex64::new(s * w, 0.0);
        }
        fft.process_with_scratch(&mut buf, &mut scratch);
        for k in 0..bins {
            values[[k, t]] = buf[k];
        }
    }
    Ok(Spectrogram {
        values,
        window_len,
        hop,
        sample_rate: audio.sample_rate(),
    })
}

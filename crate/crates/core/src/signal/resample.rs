use std::f64::consts::PI;

use super::AudioBuffer;
use crate::error::{Error, Result};

/// Zero crossings of the sinc kernel on each side of the centre tap.
const ZERO_CROSSINGS: f64 = 24.0;
/// Kaiser window shape (about 80 dB stop-band attenuation).
const KAISER_BETA: f64 = 8.0;
/// Passband edge as a fraction of the output Nyquist when decimating.
const ROLLOFF: f64 = 0.94;

/// Zeroth-order modified Bessel function of the first kind.
fn bessel_i0(x: f64) -> f64 {
    let mut sum = 1.0;
    let mut term = 1.0;
    let q = x * x / 4.0;
    for k in 1..64 {
        term *= q / (k as f64 * k as f64);
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    sum
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

/// Windowed-sinc evaluation of `x` at fractional input positions.
///
/// `cutoff` is in cycles per input sample (at most 0.5).
fn sinc_interpolate(x: &[f64], positions: impl Iterator<Item = f64>, cutoff: f64) -> Vec<f64> {
    let half = ZERO_CROSSINGS / (2.0 * cutoff);
    let i0_beta = bessel_i0(KAISER_BETA);
    let n = x.len() as isize;
    positions
        .map(|t| {
            let lo = (t - half).ceil().max(0.0) as isize;
            let hi = ((t + half).floor() as isize).min(n - 1);
            let mut acc = 0.0;
            for i in lo..=hi {
                let d = t - i as f64;
                let r = d / half;
                let w = bessel_i0(KAISER_BETA * (1.0 - r * r).max(0.0).sqrt()) / i0_beta;
                acc += x[i as usize] * 2.0 * cutoff * sinc(2.0 * cutoff * d) * w;
            }
            acc
        })
        .collect()
}

/// Band-limited resampling to `target_rate` with a Kaiser-windowed sinc.
///
/// Output length is `floor(len * target_rate / rate)`; the anti-aliasing edge
/// sits just below the lower of the two Nyquist frequencies.
pub fn resample(audio: &AudioBuffer, target_rate: f64) -> Result<AudioBuffer> {
    if !(target_rate.is_finite() && target_rate > 0.0) {
        return Err(Error::invalid("target_rate", format!("{target_rate} must be > 0")));
    }
    let fs = audio.sample_rate();
    if (fs - target_rate).abs() < 1e-9 * fs {
        return Ok(audio.clone());
    }
    let ratio = fs / target_rate;
    let out_len = (audio.len() as f64 / ratio).floor() as usize;
    let cutoff = if target_rate < fs {
        0.5 * ROLLOFF * target_rate / fs
    } else {
        0.5 * ROLLOFF
    };
    let y = sinc_interpolate(audio.samples(), (0..out_len).map(|i| i as f64 * ratio), cutoff);
    AudioBuffer::new(y, target_rate)
}

/// Zero-phase windowed-sinc low-pass at `cutoff_hz`.
pub fn lowpass(audio: &AudioBuffer, cutoff_hz: f64) -> Result<AudioBuffer> {
    let fs = audio.sample_rate();
    if !(cutoff_hz > 0.0) {
        return Err(Error::invalid("cutoff_hz", "must be > 0"));
    }
    if cutoff_hz >= fs / 2.0 {
        return Ok(audio.clone());
    }
    let y = sinc_interpolate(audio.samples(), (0..audio.len()).map(|i| i as f64), cutoff_hz / fs);
    AudioBuffer::new(y, fs)
}

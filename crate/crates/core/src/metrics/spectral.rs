use crate::error::{Error, Result};
use crate::signal::{align_pair, mel_spectrogram, AudioBuffer, MelConfig, Spectrogram};

/// Magnitudes are clamped to this before taking the log.
pub const LOG_MEL_FLOOR: f64 = 1e-5;

/// Sum over the seven multi-resolution mel configurations of the mean
/// absolute difference between natural-log mel spectrograms.
pub fn mel_loss(reference: &AudioBuffer, degraded: &AudioBuffer) -> Result<f64> {
    let (r, d) = align_pair(reference, degraded)?;
    let mut total = 0.0;
    for cfg in MelConfig::multi_resolution(r.sample_rate()) {
        if r.len() < cfg.window_len {
            return Err(Error::InputTooShort(format!(
                "mel loss needs at least {} samples, got {}",
                cfg.window_len,
                r.len()
            )));
        }
        let a = mel_spectrogram(&r, &cfg)?;
        let b = mel_spectrogram(&d, &cfg)?;
        let sum: f64 = a
            .iter()
            .zip(&b)
            .map(|(x, y)| (x.max(LOG_MEL_FLOOR).ln() - y.max(LOG_MEL_FLOOR).ln()).abs())
            .sum();
        total += sum / a.len() as f64;
    }
    Ok(total)
}

/// Mean absolute elementwise difference of two magnitude spectrograms.
pub fn mag_l1(reference: &Spectrogram<f64>, degraded: &Spectrogram<f64>) -> Result<f64> {
    if reference.values.dim() != degraded.values.dim() {
        return Err(Error::ShapeMismatch(format!(
            "{:?} vs {:?}",
            reference.values.dim(),
            degraded.values.dim()
        )));
    }
    if reference.values.is_empty() {
        return Err(Error::InputTooShort("empty spectrogram".into()));
    }
    let sum: f64 = reference.values.iter().zip(&degraded.values).map(|(a, b)| (a - b).abs()).sum();
    Ok(sum / reference.values.len() as f64)
}

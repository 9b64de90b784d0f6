use super::AudioBuffer;
use crate::error::{Error, Result};

/// Mean and population standard deviation.
pub fn mean_and_std(x: &[f64]) -> (f64, f64) {
    if x.is_empty() {
        return (0.0, 0.0);
    }
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let var = x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Z-scores a raw slice using the population standard deviation.
pub fn zscore(x: &[f64]) -> Result<Vec<f64>> {
    if x.len() < 2 {
        return Err(Error::InputTooShort(format!(
            "z-score needs at least 2 samples, got {}",
            x.len()
        )));
    }
    let (mean, std) = mean_and_std(x);
    // Relative threshold so that a constant signal with rounding noise in the
    // mean still counts as constant.
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if std <= scale * 1e-12 || std == 0.0 {
        return Err(Error::DegenerateNormalization);
    }
    let mut out: Vec<f64> = x.iter().map(|v| (v - mean) / std).collect();
    // One refinement pass removes the residual rounding in mean and scale.
    let (m2, s2) = mean_and_std(&out);
    for v in &mut out {
        *v = (*v - m2) / s2;
    }
    Ok(out)
}

pub fn zscore_normalize(audio: &AudioBuffer) -> Result<AudioBuffer> {
    AudioBuffer::new(zscore(audio.samples())?, audio.sample_rate())
}

//! mmWave-like degradation of clean speech: z-scored speech plus scaled
//! purple and Gaussian noise.

mod dataset;
mod noise;

pub use dataset::{build_dataset, item_config, synthesize_item, DatasetRow, MANIFEST_NAME};
pub use noise::{gen_gaussian_noise, gen_purple_noise};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::derive_seed;
use crate::signal::{zscore, AudioBuffer};

/// Gains of the two noise components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthesisConfig {
    /// Purple-noise gain.
    pub alpha: f64,
    /// Gaussian-noise gain.
    pub beta: f64,
    pub seed: u64,
    /// Draw per-item gains uniformly within ±50 % of `alpha` and `beta` when
    /// building datasets.
    #[serde(default)]
    pub jitter: bool,
}

impl Default for SynthesisConfig {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            beta: 0.3,
            seed: 0,
            jitter: false,
        }
    }
}

impl SynthesisConfig {
    pub fn validate(&self) -> Result<()> {
        for (field, v) in [("alpha", self.alpha), ("beta", self.beta)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::invalid(field, format!("{v} must be >= 0")));
            }
        }
        Ok(())
    }
}

/// The additive part `alpha * purple + beta * gaussian` for `n` samples.
///
/// Depends only on `n`, the gains and the seed, never on the speech.
pub fn mmvib_noise(n: usize, sample_rate: f64, cfg: &SynthesisConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let purple = gen_purple_noise(n, sample_rate, derive_seed(cfg.seed, 1))?;
    let gauss = gen_gaussian_noise(n, sample_rate, derive_seed(cfg.seed, 2))?;
    Ok(purple
        .samples()
        .iter()
        .zip(gauss.samples())
        .map(|(p, g)| cfg.alpha * p + cfg.beta * g)
        .collect())
}

/// `zscore(speech) + alpha * purple + beta * gaussian`, both noises unit
/// variance and as long as the speech.
pub fn synthesize_mmvib(speech: &AudioBuffer, cfg: &SynthesisConfig) -> Result<AudioBuffer> {
    cfg.validate()?;
    let clean = zscore(speech.samples())?;
    let noise = mmvib_noise(clean.len(), speech.sample_rate(), cfg)?;
    AudioBuffer::new(
        clean.iter().zip(&noise).map(|(s, n)| s + n).collect(),
        speech.sample_rate(),
    )
}

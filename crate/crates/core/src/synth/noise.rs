use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::signal::{zscore, AudioBuffer};

fn white(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()
}

/// I.i.d. Gaussian samples, z-scored to exactly zero mean and unit
/// population variance.
pub fn gen_gaussian_noise(n: usize, sample_rate: f64, seed: u64) -> Result<AudioBuffer> {
    if n < 2 {
        return Err(Error::InputTooShort(format!("Gaussian noise needs n >= 2, got {n}")));
    }
    AudioBuffer::new(zscore(&white(n, seed))?, sample_rate)
}

/// Purple (violet) noise: power spectral density proportional to f² over the
/// whole band, z-scored.
///
/// White Gaussian noise is shaped in the frequency domain by `|f|` (DC
/// removed), which keeps the f² law exact up to Nyquist.
pub fn gen_purple_noise(n: usize, sample_rate: f64, seed: u64) -> Result<AudioBuffer> {
    if n < 4 {
        return Err(Error::InputTooShort(format!("purple noise needs n >= 4, got {n}")));
    }
    let mut buf: Vec<Complex64> = white(n, seed).into_iter().map(|v| Complex64::new(v, 0.0)).collect();
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_forward(n).process(&mut buf);
    for (k, z) in buf.iter_mut().enumerate() {
        let kk = if k <= n / 2 { k } else { n - k };
        *z *= kk as f64;
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    let shaped: Vec<f64> = buf.iter().map(|z| z.re).collect();
    AudioBuffer::new(zscore(&shaped)?, sample_rate)
}

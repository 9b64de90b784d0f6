//! Deterministic speech-like test signals.
//!
//! A source-filter model: a jittered glottal pulse train (or white noise for
//! fricatives) drives three formant resonators, shaped into syllables
//! separated by pauses. Good enough to exercise every metric on material
//! with speech-like spectra, pitch and silences.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::rng::rng_for;
use crate::signal::AudioBuffer;

/// Formant triples (Hz) for a handful of vowels.
const VOWELS: [[f64; 3]; 6] = [
    [730.0, 1090.0, 2440.0],
    [270.0, 2290.0, 3010.0],
    [300.0, 870.0, 2240.0],
    [530.0, 1840.0, 2480.0],
    [570.0, 840.0, 2410.0],
    [660.0, 1720.0, 2410.0],
];

const GLOTTAL_CORNER_HZ: f64 = 200.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UtteranceSpec {
    pub seed: u64,
    pub duration_s: f64,
    pub sample_rate: f64,
    /// Mean fundamental frequency in Hz.
    pub f0: f64,
    /// RMS of the background noise relative to full scale.
    pub noise_floor: f64,
}

impl Default for UtteranceSpec {
    fn default() -> Self {
        Self {
            seed: 0,
            duration_s: 3.0,
            sample_rate: 16000.0,
            f0: 140.0,
            noise_floor: 1e-4,
        }
    }
}

struct Resonator {
    a1: f64,
    a2: f64,
    gain: f64,
    y1: f64,
    y2: f64,
}

impl Resonator {
    fn new(freq: f64, bandwidth: f64, fs: f64) -> Self {
        let r = (-PI * bandwidth / fs).exp();
        Self {
            a1: 2.0 * r * (TAU * freq / fs).cos(),
            a2: -r * r,
            gain: 1.0 - r,
            y1: 0.0,
            y2: 0.0,
        }
    }

    fn step(&mut self, x: f64) -> f64 {
        let y = self.gain * x + self.a1 * self.y1 + self.a2 * self.y2;
        self.y2 = self.y1;
        self.y1 = y;
        y
    }
}

/// Renders one utterance, peak-normalised to 0.5.
pub fn utterance(spec: &UtteranceSpec) -> AudioBuffer {
    let fs = spec.sample_rate;
    let n = (spec.duration_s * fs).round() as usize;
    let mut rng = rng_for(spec.seed, 0);
    let mut out = vec![0.0; n];

    // One-pole lowpass giving the glottal source its -6 dB/octave tilt.
    let tilt = 1.0 - (-TAU * GLOTTAL_CORNER_HZ / fs).exp();
    let mut pos = (rng.random_range(0.05..0.2) * fs) as usize;
    while pos < n {
        let len = ((rng.random_range(0.12..0.32)) * fs) as usize;
        let end = (pos + len).min(n);
        let voiced = rng.random_bool(0.8);
        let vowel = VOWELS[rng.random_range(0..VOWELS.len())];
        let next = VOWELS[rng.random_range(0..VOWELS.len())];
        let f0 = spec.f0 * rng.random_range(0.8..1.25);
        let loud = rng.random_range(0.5..1.0);
        let mut res: Vec<Resonator> = (0..3)
            .map(|i| Resonator::new(vowel[i], 60.0 + 40.0 * i as f64, fs))
            .collect();
        let mut phase = 0.0;
        let mut glottal = 0.0;
        for (j, t) in (pos..end).enumerate() {
            let u = j as f64 / (end - pos).max(1) as f64;
            if j % 64 == 0 {
                for (i, r) in res.iter_mut().enumerate() {
                    let f = vowel[i] + (next[i] - vowel[i]) * u;
                    let fresh = Resonator::new(f, 60.0 + 40.0 * i as f64, fs);
                    r.a1 = fresh.a1;
                    r.a2 = fresh.a2;
                }
            }
            let excitation = if voiced {
                let f = f0 * (1.0 - 0.15 * u) * (1.0 + 0.01 * (TAU * 5.0 * t as f64 / fs).sin());
                phase += f / fs;
                let pulse = if phase >= 1.0 {
                    phase -= 1.0;
                    1.0
                } else {
                    0.0
                };
                glottal += tilt * (pulse - glottal);
                glottal
            } else {
                0.004 * Distribution::<f64>::sample(&StandardNormal, &mut rng)
            };
            let mut y = 0.0;
            for (i, r) in res.iter_mut().enumerate() {
                y += r.step(excitation) / (1.0 + i as f64);
            }
            if !voiced {
                y = excitation;
            }
            let env = (PI * u).sin().powf(0.6);
            out[t] += loud * env * y;
        }
        let gap = if rng.random_bool(0.2) { rng.random_range(0.2..0.4) } else { rng.random_range(0.03..0.12) };
        pos = end + (gap * fs) as usize;
    }

    let peak = out.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak > 0.0 {
        out.iter_mut().for_each(|v| *v *= 0.5 / peak);
    }
    let mut noise_rng = rng_for(spec.seed, 1);
    for v in &mut out {
        let e: f64 = StandardNormal.sample(&mut noise_rng);
        *v += spec.noise_floor * e;
    }
    AudioBuffer::new(out, fs).expect("finite samples at a positive rate")
}

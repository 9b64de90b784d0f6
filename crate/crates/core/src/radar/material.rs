use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::VibrationTrace;
use crate::error::{Error, Result};
use crate::signal::AudioBuffer;

/// Mass-spring-damper model of a surface driven by sound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceMaterial {
    /// kg
    pub mass: f64,
    /// N/m
    pub stiffness: f64,
    /// N·s/m
    pub damping: f64,
    /// Fraction of the radar return amplitude, `[0, 1]`.
    pub reflectivity: f64,
}

impl SurfaceMaterial {
    pub fn new(mass: f64, stiffness: f64, damping: f64, reflectivity: f64) -> Result<Self> {
        let m = Self {
            mass,
            stiffness,
            damping,
            reflectivity,
        };
        m.validate()?;
        Ok(m)
    }

    /// Builds a material from its natural frequency (Hz) and damping ratio.
    pub fn from_resonance(mass: f64, natural_hz: f64, damping_ratio: f64, reflectivity: f64) -> Result<Self> {
        let w_n = TAU * natural_hz;
        let stiffness = mass * w_n * w_n;
        let damping = 2.0 * damping_ratio * (stiffness * mass).sqrt();
        Self::new(mass, stiffness, damping, reflectivity)
    }

    /// Aluminium-coated PET film: light, resonant at a few kHz, highly reflective.
    pub fn pet() -> Self {
        Self::from_resonance(1.0e-4, 3000.0, 0.35, 0.9).expect("valid preset")
    }

    /// Tinfoil: three times the mass of PET with a lower resonance.
    pub fn tinfoil() -> Self {
        Self::from_resonance(3.0e-4, 1200.0, 0.3, 0.8).expect("valid preset")
    }

    /// Loudspeaker cone: heavy and low-resonant.
    pub fn loudspeaker() -> Self {
        Self::from_resonance(2.0e-3, 500.0, 0.4, 0.6).expect("valid preset")
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "pet" => Some(Self::pet()),
            "tinfoil" => Some(Self::tinfoil()),
            "loudspeaker" | "speaker" => Some(Self::loudspeaker()),
            _ => None,
        }
    }

    pub const PRESETS: [&'static str; 3] = ["pet", "tinfoil", "loudspeaker"];

    /// `sqrt(k / m)`, rad/s.
    pub fn natural_frequency(&self) -> f64 {
        (self.stiffness / self.mass).sqrt()
    }

    pub fn damping_ratio(&self) -> f64 {
        self.damping / (2.0 * (self.stiffness * self.mass).sqrt())
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass.is_finite() && self.mass > 0.0) {
            return Err(Error::invalid("mass", format!("{} must be > 0", self.mass)));
        }
        if !(self.stiffness.is_finite() && self.stiffness > 0.0) {
            return Err(Error::invalid("stiffness", format!("{} must be > 0", self.stiffness)));
        }
        if !(self.damping.is_finite() && self.damping >= 0.0) {
            return Err(Error::invalid("damping", format!("{} must be >= 0", self.damping)));
        }
        if !(0.0..=1.0).contains(&self.reflectivity) {
            return Err(Error::invalid(
                "reflectivity",
                format!("{} must lie in [0, 1]", self.reflectivity),
            ));
        }
        Ok(())
    }

    /// Mechanical impedance magnitude `sqrt((k - m w²)² + (c w)²)`.
    fn impedance(&self, w: f64) -> Result<f64> {
        let reactive = self.stiffness - self.mass * w * w;
        let resistive = self.damping * w;
        if self.damping == 0.0 && reactive.abs() <= 1e-12 * self.stiffness {
            return Err(Error::UnboundedResonance {
                w_n: self.natural_frequency(),
            });
        }
        Ok(reactive.hypot(resistive))
    }
}

/// Steady-state vibration amplitude `F0 / sqrt((k - m w²)² + (c w)²)` in metres
/// for a sinusoidal force of amplitude `force` newtons at `w` rad/s.
pub fn forced_response_amplitude(mat: &SurfaceMaterial, force: f64, w: f64) -> Result<f64> {
    Ok(force / mat.impedance(w)?)
}

/// Surface displacement produced by `audio` acting as a force of
/// `force_scale` newtons per unit sample amplitude.
///
/// Every spectral component is scaled by the magnitude response
/// `X(w) / F0` (no phase shift), so the output stays time-aligned with the
/// input.
pub fn displacement_from_audio(
    audio: &AudioBuffer,
    mat: &SurfaceMaterial,
    force_scale: f64,
) -> Result<VibrationTrace> {
    mat.validate()?;
    let n = audio.len();
    if n == 0 {
        return Err(Error::InputTooShort("audio is empty".into()));
    }
    let fs = audio.sample_rate();
    let mut planner = FftPlanner::<f64>::new();
    let mut buf: Vec<Complex64> = audio.samples().iter().map(|&s| Complex64::new(s, 0.0)).collect();
    planner.plan_fft_forward(n).process(&mut buf);
    for (k, z) in buf.iter_mut().enumerate() {
        // signed frequency index
        let kk = if k <= n / 2 { k as f64 } else { k as f64 - n as f64 };
        let w = TAU * kk.abs() * fs / n as f64;
        *z *= force_scale / mat.impedance(w)?;
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    let displacement = buf.iter().map(|z| z.re / n as f64).collect();
    VibrationTrace::new(displacement, fs)
}

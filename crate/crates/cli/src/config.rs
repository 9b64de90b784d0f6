//! TOML pipeline configuration.

use std::path::Path;

use anyhow::{bail, Context, Result};
use mmvib_core::radar::{ChirpConfig, SceneParams, SurfaceMaterial, MAX_BANDWIDTH_HZ};
use mmvib_core::SynthesisConfig;
use serde::{Deserialize, Serialize};

/// Environment variable that overrides the configured root seed.
pub const SEED_ENV: &str = "MMVIB_SEED";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RadarSection {
    pub carrier_freq_hz: f64,
    pub bandwidth_hz: f64,
    pub chirps_per_frame: usize,
    pub frame_period_s: f64,
    /// Fraction of the frame spent chirping.
    pub duty_cycle: f64,
    pub adc_samples: usize,
}

impl Default for RadarSection {
    fn default() -> Self {
        Self {
            carrier_freq_hz: 60.0e9,
            bandwidth_hz: MAX_BANDWIDTH_HZ,
            chirps_per_frame: 256,
            frame_period_s: 0.032,
            duty_cycle: 0.9,
            adc_samples: 128,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SceneSection {
    pub range_m: f64,
    pub noise_floor_db: f64,
}

impl Default for SceneSection {
    fn default() -> Self {
        let s = SceneParams::default();
        Self { range_m: s.range_m, noise_floor_db: s.noise_floor_db }
    }
}

/// A preset, optionally with individual parameters overridden.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MaterialSection {
    pub preset: String,
    pub mass_kg: Option<f64>,
    pub stiffness_n_per_m: Option<f64>,
    pub damping_ns_per_m: Option<f64>,
    pub reflectivity: Option<f64>,
    /// Newtons of driving force per unit of audio amplitude.
    pub force_scale_n: f64,
}

impl Default for MaterialSection {
    fn default() -> Self {
        Self {
            preset: "pet".into(),
            mass_kg: None,
            stiffness_n_per_m: None,
            damping_ns_per_m: None,
            reflectivity: None,
            force_scale_n: 0.2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ArtifactSection {
    pub beginning_sigma: f64,
    pub periodic_sigma: f64,
}

impl Default for ArtifactSection {
    fn default() -> Self {
        Self { beginning_sigma: 10.0, periodic_sigma: 6.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthSection {
    pub alpha: f64,
    pub beta: f64,
    pub jitter: bool,
    pub sample_rate_hz: f64,
}

impl Default for SynthSection {
    fn default() -> Self {
        let s = SynthesisConfig::default();
        Self { alpha: s.alpha, beta: s.beta, jitter: false, sample_rate_hz: 8000.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScoreSection {
    /// The source is low-passed here before it serves as a reference.
    pub reference_cutoff_hz: f64,
}

impl Default for ScoreSection {
    fn default() -> Self {
        Self { reference_cutoff_hz: 4000.0 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub seed: u64,
    pub radar: RadarSection,
    pub scene: SceneSection,
    pub material: MaterialSection,
    pub artifacts: ArtifactSection,
    pub synth: SynthSection,
    pub score: ScoreSection,
}

fn check(ok: bool, field: &str, msg: impl std::fmt::Display) -> Result<()> {
    if !ok {
        bail!("{field}: {msg}");
    }
    Ok(())
}

impl PipelineConfig {
    /// Reads `path` (or the defaults when `None`), applies the seed override
    /// from [`SEED_ENV`] and validates every section.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let mut cfg = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                Self::from_toml(&text).with_context(|| format!("in {}", p.display()))?
            }
            None => Self::default(),
        };
        if let Ok(v) = std::env::var(SEED_ENV) {
            cfg.seed = v
                .trim()
                .parse()
                .with_context(|| format!("{SEED_ENV}={v:?} is not an unsigned integer"))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always serialisable")
    }

    pub fn chirp_config(&self) -> ChirpConfig {
        let r = &self.radar;
        let chirp_duration = r.duty_cycle * r.frame_period_s / r.chirps_per_frame.max(1) as f64;
        ChirpConfig {
            carrier_freq: r.carrier_freq_hz,
            slope: r.bandwidth_hz / chirp_duration,
            chirp_duration,
            adc_samples_per_chirp: r.adc_samples,
            chirps_per_frame: r.chirps_per_frame,
            frame_period: r.frame_period_s,
        }
    }

    pub fn material(&self) -> Result<SurfaceMaterial> {
        let m = &self.material;
        let base = SurfaceMaterial::preset(&m.preset).with_context(|| {
            format!("material.preset: unknown {:?}; valid: {}", m.preset, SurfaceMaterial::PRESETS.join(", "))
        })?;
        let mat = SurfaceMaterial {
            mass: m.mass_kg.unwrap_or(base.mass),
            stiffness: m.stiffness_n_per_m.unwrap_or(base.stiffness),
            damping: m.damping_ns_per_m.unwrap_or(base.damping),
            reflectivity: m.reflectivity.unwrap_or(base.reflectivity),
        };
        mat.validate().context("material")?;
        Ok(mat)
    }

    pub fn scene(&self) -> Result<SceneParams> {
        Ok(SceneParams {
            range_m: self.scene.range_m,
            reflectivity: self.material()?.reflectivity,
            noise_floor_db: self.scene.noise_floor_db,
        })
    }

    pub fn synthesis(&self) -> SynthesisConfig {
        SynthesisConfig { alpha: self.synth.alpha, beta: self.synth.beta, seed: self.seed, jitter: self.synth.jitter }
    }

    pub fn validate(&self) -> Result<()> {
        let r = &self.radar;
        check(r.carrier_freq_hz > 0.0, "radar.carrier_freq_hz", "must be > 0")?;
        check(
            r.bandwidth_hz > 0.0 && r.bandwidth_hz <= MAX_BANDWIDTH_HZ,
            "radar.bandwidth_hz",
            format_args!("{} must lie in (0, {MAX_BANDWIDTH_HZ}]", r.bandwidth_hz),
        )?;
        check(r.chirps_per_frame >= 2, "radar.chirps_per_frame", "must be >= 2")?;
        check(r.frame_period_s > 0.0, "radar.frame_period_s", "must be > 0")?;
        check(r.duty_cycle > 0.0 && r.duty_cycle <= 1.0, "radar.duty_cycle", "must lie in (0, 1]")?;
        check(r.adc_samples >= 4, "radar.adc_samples", "must be >= 4")?;
        let chirp = self.chirp_config();
        chirp.validate().context("radar")?;
        check(
            self.scene.range_m > 0.0 && self.scene.range_m < chirp.max_unambiguous_range(),
            "scene.range_m",
            format_args!("{} m outside (0, {:.3}) m", self.scene.range_m, chirp.max_unambiguous_range()),
        )?;
        check(
            !self.scene.noise_floor_db.is_nan() && self.scene.noise_floor_db != f64::INFINITY,
            "scene.noise_floor_db",
            "must be finite or -inf",
        )?;
        self.material()?;
        check(
            self.material.force_scale_n.is_finite() && self.material.force_scale_n > 0.0,
            "material.force_scale_n",
            "must be > 0",
        )?;
        for (f, v) in [("artifacts.beginning_sigma", self.artifacts.beginning_sigma), ("artifacts.periodic_sigma", self.artifacts.periodic_sigma)] {
            check(v.is_finite() && v >= 0.0, f, "must be >= 0")?;
        }
        for (f, v) in [("synth.alpha", self.synth.alpha), ("synth.beta", self.synth.beta)] {
            check(v.is_finite() && v >= 0.0, f, "must be >= 0")?;
        }
        check(self.synth.sample_rate_hz > 0.0, "synth.sample_rate_hz", "must be > 0")?;
        check(self.score.reference_cutoff_hz > 0.0, "score.reference_cutoff_hz", "must be > 0")?;
        Ok(())
    }
}

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use mmvib_core::io::{read_wav, write_json};
use mmvib_core::synth::synthesize_mmvib;
use mmvib_core::{AudioBuffer, MetricsReport};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::CommonArgs;
use crate::config::PipelineConfig;
use crate::pipeline;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    ChirpsPerFrame,
    RangeM,
    NoiseFloorDb,
    Alpha,
    Beta,
    Material,
}

impl SweepParam {
    pub const ALL: [SweepParam; 6] = [
        SweepParam::ChirpsPerFrame,
        SweepParam::RangeM,
        SweepParam::NoiseFloorDb,
        SweepParam::Alpha,
        SweepParam::Beta,
        SweepParam::Material,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepParam::ChirpsPerFrame => "chirps_per_frame",
            SweepParam::RangeM => "range_m",
            SweepParam::NoiseFloorDb => "noise_floor_db",
            SweepParam::Alpha => "alpha",
            SweepParam::Beta => "beta",
            SweepParam::Material => "material",
        }
    }

    /// Returns `base` with this parameter set to `value`.
    ///
    /// `chirps_per_frame` keeps the frame period and chirp slope, so the
    /// swept bandwidth scales by `old / new`.
    pub fn apply(self, base: &PipelineConfig, value: &str) -> Result<PipelineConfig> {
        let mut cfg = base.clone();
        let num = || value.parse::<f64>().with_context(|| format!("{value:?} is not a number"));
        match self {
            SweepParam::ChirpsPerFrame => {
                let n: usize = value.parse().with_context(|| format!("{value:?} is not a chirp count"))?;
                if n < 2 {
                    bail!("chirps_per_frame must be >= 2");
                }
                let old = cfg.radar.chirps_per_frame as f64;
                cfg.radar.bandwidth_hz *= old / n as f64;
                cfg.radar.chirps_per_frame = n;
            }
            SweepParam::RangeM => cfg.scene.range_m = num()?,
            SweepParam::NoiseFloorDb => cfg.scene.noise_floor_db = num()?,
            SweepParam::Alpha => cfg.synth.alpha = num()?,
            SweepParam::Beta => cfg.synth.beta = num()?,
            SweepParam::Material => {
                cfg.material.preset = value.to_string();
                cfg.material.mass_kg = None;
                cfg.material.stiffness_n_per_m = None;
                cfg.material.damping_ns_per_m = None;
                cfg.material.reflectivity = None;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Whether the parameter affects the synthetic path rather than the radar.
    pub fn is_synthetic(self) -> bool {
        matches!(self, SweepParam::Alpha | SweepParam::Beta)
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParam {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        SweepParam::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| {
            let names: Vec<_> = SweepParam::ALL.iter().map(|p| p.name()).collect();
            format!("unknown parameter {s:?}; valid: {}", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, clap::Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Source audio (WAV).
    #[arg(long)]
    pub input: PathBuf,
    /// Parameter to vary.
    #[arg(long)]
    pub param: SweepParam,
    /// Comma-separated values.
    #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub values: Vec<String>,
    /// JSON report to write.
    #[arg(long)]
    pub output: PathBuf,
    /// CSV table; defaults to the report path with a .csv extension.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// One sweep point. Flat so it maps onto a CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub index: usize,
    pub param: String,
    pub value: String,
    pub chirps_per_frame: Option<usize>,
    pub sampling_rate_hz: Option<f64>,
    pub bandwidth_hz: Option<f64>,
    pub range_resolution_m: Option<f64>,
    pub target_range_m: Option<f64>,
    pub fwsegsnr: Option<f64>,
    pub stoi: Option<f64>,
    pub mcd: Option<f64>,
    pub mel_loss: Option<f64>,
    pub mag_l1: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub param: SweepParam,
    pub seed: u64,
    pub source: String,
    pub rows: Vec<SweepRow>,
}

fn run_point(param: SweepParam, cfg: &PipelineConfig, source: &AudioBuffer) -> Result<(Option<f64>, MetricsReport)> {
    if param.is_synthetic() {
        let reference = pipeline::reference(cfg, source, cfg.synth.sample_rate_hz)?;
        let degraded = synthesize_mmvib(&reference, &cfg.synthesis())?;
        Ok((None, pipeline::score_normalized(&reference, &degraded)?))
    } else {
        let (ex, report) = pipeline::radar_round_trip(cfg, source)?;
        Ok((Some(ex.target_range_m), report))
    }
}

pub fn run_sweep(base: &PipelineConfig, param: SweepParam, values: &[String], source: &AudioBuffer) -> Result<Vec<SweepRow>> {
    let values: Vec<&str> = values.iter().map(|v| v.trim()).filter(|v| !v.is_empty()).collect();
    if values.is_empty() {
        bail!("--values: empty list");
    }
    Ok(values
        .par_iter()
        .enumerate()
        .map(|(index, value)| {
            let mut row = SweepRow {
                index,
                param: param.name().into(),
                value: value.to_string(),
                chirps_per_frame: None,
                sampling_rate_hz: None,
                bandwidth_hz: None,
                range_resolution_m: None,
                target_range_m: None,
                fwsegsnr: None,
                stoi: None,
                mcd: None,
                mel_loss: None,
                mag_l1: None,
                error: None,
            };
            let result = param.apply(base, value).and_then(|cfg| {
                let chirp = cfg.chirp_config();
                row.chirps_per_frame = Some(chirp.chirps_per_frame);
                row.sampling_rate_hz = Some(chirp.sampling_rate());
                row.bandwidth_hz = Some(chirp.bandwidth());
                row.range_resolution_m = Some(chirp.range_resolution());
                run_point(param, &cfg, source)
            });
            match result {
                Ok((target, m)) => {
                    row.target_range_m = target;
                    row.fwsegsnr = Some(m.fwsegsnr);
                    row.stoi = Some(m.stoi);
                    row.mcd = Some(m.mcd);
                    row.mel_loss = Some(m.mel_loss);
                    row.mag_l1 = Some(m.mag_l1);
                }
                Err(e) => row.error = Some(format!("{e:#}")),
            }
            row
        })
        .collect())
}

/// Writes the JSON report and CSV even when some points fail, then fails if
/// any did.
pub fn sweep(args: &SweepArgs) -> Result<SweepReport> {
    let cfg = args.common.load()?;
    let source = read_wav(&args.input)?;
    let rows = run_sweep(&cfg, args.param, &args.values, &source)?;
    let report = SweepReport { param: args.param, seed: cfg.seed, source: args.input.display().to_string(), rows };
    write_json(&args.output, &report)?;
    let csv_path = args.csv.clone().unwrap_or_else(|| args.output.with_extension("csv"));
    let mut w = csv::Writer::from_path(&csv_path).with_context(|| format!("writing {}", csv_path.display()))?;
    for r in &report.rows {
        w.serialize(r)?;
    }
    w.flush()?;
    for r in &report.rows {
        match &r.error {
            None => println!(
                "{}={}: res {:.5} m, fwsegsnr {:.2} dB, stoi {:.3}, mcd {:.2}, mel {:.3}",
                r.param,
                r.value,
                r.range_resolution_m.unwrap_or(f64::NAN),
                r.fwsegsnr.unwrap_or(f64::NAN),
                r.stoi.unwrap_or(f64::NAN),
                r.mcd.unwrap_or(f64::NAN),
                r.mel_loss.unwrap_or(f64::NAN),
            ),
            Some(e) => eprintln!("{}={}: {e}", r.param, r.value),
        }
    }
    let failed = report.rows.iter().filter(|r| r.error.is_some()).count();
    if failed > 0 {
        return Err(anyhow!("{failed} of {} sweep points failed", report.rows.len()));
    }
    Ok(report)
}

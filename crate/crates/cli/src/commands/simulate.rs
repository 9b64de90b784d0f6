use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use mmvib_core::io::{read_wav, write_json};
use mmvib_core::radar::{ArtifactLog, ChirpConfig};
use serde::{Deserialize, Serialize};

use super::CommonArgs;
use crate::config::PipelineConfig;
use crate::pipeline;

#[derive(Debug, Clone, clap::Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Source audio (WAV).
    #[arg(long)]
    pub input: PathBuf,
    /// Capture file to write.
    #[arg(long)]
    pub output: PathBuf,
}

/// Written next to the capture as `<capture>.artifacts.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateSidecar {
    pub seed: u64,
    pub source: String,
    pub n_frames: usize,
    pub range_resolution_m: f64,
    pub sampling_rate_hz: f64,
    pub chirp: ChirpConfig,
    pub artifact_log: ArtifactLog,
    pub config: PipelineConfig,
}

pub fn sidecar_path(capture: &Path) -> PathBuf {
    let mut s = capture.as_os_str().to_owned();
    s.push(".artifacts.json");
    PathBuf::from(s)
}

pub fn simulate(args: &SimulateArgs) -> Result<SimulateSidecar> {
    let cfg = args.common.load()?;
    let audio = read_wav(&args.input)?;
    if audio.is_empty() {
        bail!("{}: no samples", args.input.display());
    }
    let cap = pipeline::simulate(&cfg, &audio)?;
    cap.save(&args.output)?;
    let chirp = *cap.config();
    let sidecar = SimulateSidecar {
        seed: cfg.seed,
        source: args.input.display().to_string(),
        n_frames: cap.n_frames(),
        range_resolution_m: chirp.range_resolution(),
        sampling_rate_hz: chirp.sampling_rate(),
        chirp,
        artifact_log: cap.artifact_log.clone(),
        config: cfg,
    };
    write_json(sidecar_path(&args.output), &sidecar)?;
    println!("range resolution: {:.6} m", sidecar.range_resolution_m);
    println!("sampling rate: {} Hz", sidecar.sampling_rate_hz);
    println!("frames: {}", sidecar.n_frames);
    Ok(sidecar)
}

use std::path::PathBuf;

use anyhow::Result;
use mmvib_core::io::{write_json, write_wav};
use mmvib_core::IfCapture;
use serde::{Deserialize, Serialize};

use crate::pipeline;

#[derive(Debug, Clone, clap::Args)]
pub struct ExtractArgs {
    /// Capture file written by `simulate`.
    #[arg(long)]
    pub input: PathBuf,
    /// Displacement WAV to write (metres, float32).
    #[arg(long)]
    pub output: PathBuf,
    /// Skip both outlier-removal stages.
    #[arg(long)]
    pub no_preprocess: bool,
}

/// Written next to the WAV as `<wav>.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtractSidecar {
    pub seed: u64,
    pub capture: String,
    pub preprocess: bool,
    pub target_bin: usize,
    pub target_range_m: f64,
    pub sampling_rate_hz: f64,
    pub samples: usize,
}

pub fn extract(args: &ExtractArgs) -> Result<ExtractSidecar> {
    let cap = IfCapture::load(&args.input)?;
    let ex = pipeline::extract(&cap, !args.no_preprocess)?;
    let audio = ex.trace.into_audio();
    write_wav(&args.output, &audio)?;
    let sidecar = ExtractSidecar {
        seed: cap.seed,
        capture: args.input.display().to_string(),
        preprocess: !args.no_preprocess,
        target_bin: ex.target_bin,
        target_range_m: ex.target_range_m,
        sampling_rate_hz: audio.sample_rate(),
        samples: audio.len(),
    };
    let mut side = args.output.as_os_str().to_owned();
    side.push(".json");
    write_json(PathBuf::from(side), &sidecar)?;
    println!("target bin {} ({:.4} m), {} samples", sidecar.target_bin, sidecar.target_range_m, sidecar.samples);
    Ok(sidecar)
}

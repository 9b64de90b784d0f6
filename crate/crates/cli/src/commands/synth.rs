use std::path::PathBuf;

use anyhow::Result;
use mmvib_core::synth::{build_dataset, DatasetRow};

use super::CommonArgs;

#[derive(Debug, Clone, clap::Args)]
pub struct SynthArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// JSON-lines list of clean WAV files.
    #[arg(long)]
    pub manifest: PathBuf,
    #[arg(long)]
    pub output_dir: PathBuf,
    /// Purple-noise gain (default from config).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Gaussian-noise gain (default from config).
    #[arg(long)]
    pub beta: Option<f64>,
    /// Output sample rate in Hz (default from config).
    #[arg(long)]
    pub sample_rate: Option<f64>,
    /// Draw per-item gains within ±50 % of alpha and beta.
    #[arg(long)]
    pub jitter: bool,
}

pub fn synth(args: &SynthArgs) -> Result<Vec<DatasetRow>> {
    let cfg = args.common.load()?;
    let mut sc = cfg.synthesis();
    sc.alpha = args.alpha.unwrap_or(sc.alpha);
    sc.beta = args.beta.unwrap_or(sc.beta);
    sc.jitter |= args.jitter;
    let rate = args.sample_rate.unwrap_or(cfg.synth.sample_rate_hz);
    let rows = build_dataset(&args.manifest, &args.output_dir, &sc, rate)?;
    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    println!("{} items written, {failed} failed", rows.len() - failed);
    for r in rows.iter().filter(|r| r.error.is_some()) {
        eprintln!("item {}: {}", r.index, r.error.as_deref().unwrap_or_default());
    }
    Ok(rows)
}

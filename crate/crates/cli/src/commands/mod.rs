mod extract;
mod score;
mod simulate;
mod sweep;
mod synth;

pub use extract::{extract, ExtractArgs, ExtractSidecar};
pub use score::{score, PairEntry, PairResult, ScoreArgs, ScoreReport, Summary};
pub use simulate::{sidecar_path, simulate, SimulateArgs, SimulateSidecar};
pub use sweep::{run_sweep, sweep, SweepArgs, SweepParam, SweepReport, SweepRow};
pub use synth::{synth, SynthArgs};

use std::path::PathBuf;

use anyhow::Result;

use crate::config::PipelineConfig;

/// Options every pipeline command accepts.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct CommonArgs {
    /// TOML configuration file; defaults apply when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Root seed; overrides both the config file and MMVIB_SEED.
    #[arg(long)]
    pub seed: Option<u64>,
}

impl CommonArgs {
    pub fn load(&self) -> Result<PipelineConfig> {
        let mut cfg = PipelineConfig::load(self.config.as_deref())?;
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        Ok(cfg)
    }
}

//! Command implementations behind the `mmvib` binary.
//!
//! Each subcommand is a plain function taking its parsed arguments, so the
//! same code paths are reachable from tests and other tools.

pub mod commands;
pub mod config;
pub mod pipeline;

pub use config::{PipelineConfig, SEED_ENV};

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "mmvib", version, about = "mmWave vibration speech toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Drive a surface with audio and record a radar capture.
    Simulate(commands::SimulateArgs),
    /// Recover the surface vibration from a capture.
    Extract(commands::ExtractArgs),
    /// Build a degraded-speech dataset from clean recordings.
    Synth(commands::SynthArgs),
    /// Score reference/degraded pairs.
    Score(commands::ScoreArgs),
    /// Vary one parameter and score the full pipeline at each value.
    Sweep(commands::SweepArgs),
}

pub fn run(cli: &Cli) -> anyhow::Result<()> {
    match &cli.command {
        Command::Simulate(a) => commands::simulate(a).map(drop),
        Command::Extract(a) => commands::extract(a).map(drop),
        Command::Synth(a) => commands::synth(a).map(drop),
        Command::Score(a) => commands::score(a).map(drop),
        Command::Sweep(a) => commands::sweep(a).map(drop),
    }
}

use std::path::{Path, PathBuf};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{synthesize_mmvib, SynthesisConfig};
use crate::error::{Error, Result};
use crate::io::{read_jsonl, read_wav, write_jsonl, write_wav};
use crate::rng::{derive_seed, rng_for};
use crate::signal::{resample, AudioBuffer};

/// File name of the output manifest inside the dataset directory.
pub const MANIFEST_NAME: &str = "manifest.jsonl";

/// One output manifest line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetRow {
    pub index: usize,
    pub source_path: String,
    pub clean_path: Option<String>,
    pub degraded_path: Option<String>,
    pub seed: u64,
    pub alpha: f64,
    pub beta: f64,
    pub sample_rate: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// The synthesis parameters used for item `index` of a batch run with `cfg`.
pub fn item_config(cfg: &SynthesisConfig, index: usize) -> SynthesisConfig {
    let seed = derive_seed(cfg.seed, index as u64);
    let (alpha, beta) = if cfg.jitter {
        let mut rng = rng_for(seed, 0);
        (cfg.alpha * rng.random_range(0.5..=1.5), cfg.beta * rng.random_range(0.5..=1.5))
    } else {
        (cfg.alpha, cfg.beta)
    };
    SynthesisConfig { alpha, beta, seed, jitter: false }
}

/// Loads, resamples and degrades a single item exactly as [`build_dataset`]
/// does for position `index`. Returns `(clean, degraded, item_cfg)`.
pub fn synthesize_item(
    source: impl AsRef<Path>,
    index: usize,
    cfg: &SynthesisConfig,
    sample_rate: f64,
) -> Result<(AudioBuffer, AudioBuffer, SynthesisConfig)> {
    let raw = read_wav(source)?;
    let clean = if raw.sample_rate() == sample_rate { raw } else { resample(&raw, sample_rate)? };
    let icfg = item_config(cfg, index);
    let degraded = synthesize_mmvib(&clean, &icfg)?;
    Ok((clean, degraded, icfg))
}

fn source_path(entry: &serde_json::Value) -> Option<&str> {
    match entry {
        serde_json::Value::String(s) => Some(s),
        serde_json::Value::Object(m) => ["path", "audio_path", "clean_path", "ref_path"]
            .iter()
            .find_map(|k| m.get(*k).and_then(|v| v.as_str())),
        _ => None,
    }
}

/// Degrades every WAV listed in `manifest_in` and writes
/// `clean/NNNNNN.wav`, `degraded/NNNNNN.wav` and [`MANIFEST_NAME`] under
/// `out_dir`.
///
/// Each line of the input is a JSON string or an object with a `path` key;
/// relative paths resolve against the manifest's directory. Failed items are
/// recorded with an `error` and skipped; the call fails only when every item
/// fails.
pub fn build_dataset(
    manifest_in: impl AsRef<Path>,
    out_dir: impl AsRef<Path>,
    cfg: &SynthesisConfig,
    sample_rate: f64,
) -> Result<Vec<DatasetRow>> {
    cfg.validate()?;
    if !(sample_rate.is_finite() && sample_rate > 0.0) {
        return Err(Error::invalid("sample_rate", format!("{sample_rate} must be > 0")));
    }
    let manifest_in = manifest_in.as_ref();
    let out_dir = out_dir.as_ref();
    let entries: Vec<serde_json::Value> = read_jsonl(manifest_in)?;
    if entries.is_empty() {
        return Err(Error::InputTooShort(format!("{} lists no items", manifest_in.display())));
    }
    let base = manifest_in.parent().unwrap_or(Path::new(""));
    for sub in ["clean", "degraded"] {
        let d = out_dir.join(sub);
        std::fs::create_dir_all(&d).map_err(|e| Error::io(&d, e))?;
    }

    let rows: Vec<DatasetRow> = entries
        .par_iter()
        .enumerate()
        .map(|(index, entry)| {
            let icfg = item_config(cfg, index);
            let mut row = DatasetRow {
                index,
                source_path: source_path(entry).unwrap_or_default().to_string(),
                clean_path: None,
                degraded_path: None,
                seed: icfg.seed,
                alpha: icfg.alpha,
                beta: icfg.beta,
                sample_rate,
                error: None,
            };
            let result = (|| {
                let src = source_path(entry)
                    .ok_or_else(|| Error::Format(format!("line {}: no audio path", index + 1)))?;
                let src = base.join(src);
                let (clean, degraded, _) = synthesize_item(&src, index, cfg, sample_rate)?;
                let name = format!("{index:06}.wav");
                let clean_path: PathBuf = out_dir.join("clean").join(&name);
                let degraded_path: PathBuf = out_dir.join("degraded").join(&name);
                write_wav(&clean_path, &clean)?;
                write_wav(&degraded_path, &degraded)?;
                Ok::<_, Error>((clean_path, degraded_path))
            })();
            match result {
                Ok((c, d)) => {
                    row.clean_path = Some(c.display().to_string());
                    row.degraded_path = Some(d.display().to_string());
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            row
        })
        .collect();

    write_jsonl(out_dir.join(MANIFEST_NAME), &rows)?;
    if let Some(first) = rows.iter().map(|r| r.error.as_ref()).collect::<Option<Vec<_>>>() {
        return Err(Error::AllItemsFailed { count: rows.len(), first: first[0].clone() });
    }
    Ok(rows)
}

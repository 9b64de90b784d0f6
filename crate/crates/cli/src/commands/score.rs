use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use mmvib_core::io::{read_jsonl, read_wav, write_json};
use mmvib_core::metrics::score_pair;
use mmvib_core::MetricsReport;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::pipeline::at_rate;

#[derive(Debug, Clone, clap::Args)]
pub struct ScoreArgs {
    /// JSON-lines of {ref_path, deg_path[, ref_text, hyp_text]}.
    #[arg(long)]
    pub manifest: PathBuf,
    /// JSON report to write.
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairEntry {
    pub ref_path: String,
    pub deg_path: String,
    #[serde(default)]
    pub ref_text: Option<String>,
    #[serde(default)]
    pub hyp_text: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairResult {
    pub index: usize,
    pub ref_path: String,
    pub deg_path: String,
    pub metrics: Option<MetricsReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Population statistics of one metric over the successful pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    pub std: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub n_pairs: usize,
    pub n_failed: usize,
    pub aggregate: BTreeMap<String, Summary>,
    pub pairs: Vec<PairResult>,
}

fn score_entry(base: &Path, e: &PairEntry) -> Result<MetricsReport> {
    let r = read_wav(base.join(&e.ref_path))?;
    let d = read_wav(base.join(&e.deg_path))?;
    let d = at_rate(&d, r.sample_rate())?;
    let texts = match (&e.ref_text, &e.hyp_text) {
        (Some(a), Some(b)) => Some((a.as_str(), b.as_str())),
        _ => None,
    };
    Ok(score_pair(&r, &d, texts)?)
}

pub fn aggregate(pairs: &[PairResult]) -> BTreeMap<String, Summary> {
    let mut values: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for m in pairs.iter().filter_map(|p| p.metrics.as_ref()) {
        for (k, v) in m.fields() {
            values.entry(k.to_string()).or_default().push(v);
        }
    }
    values
        .into_iter()
        .map(|(k, v)| {
            let n = v.len() as f64;
            let mean = v.iter().sum::<f64>() / n;
            let std = (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n).sqrt();
            (k, Summary { mean, std, count: v.len() })
        })
        .collect()
}

/// Scores every pair; unreadable pairs are reported and skipped. Fails only
/// when no pair could be scored.
pub fn score(args: &ScoreArgs) -> Result<ScoreReport> {
    let base = args.manifest.parent().unwrap_or(Path::new(""));
    let entries: Vec<serde_json::Value> = read_jsonl(&args.manifest)?;
    if entries.is_empty() {
        bail!("{}: no pairs", args.manifest.display());
    }
    let pairs: Vec<PairResult> = entries
        .par_iter()
        .enumerate()
        .map(|(index, raw)| match serde_json::from_value::<PairEntry>(raw.clone()) {
            Ok(e) => {
                let (metrics, error) = match score_entry(base, &e) {
                    Ok(m) => (Some(m), None),
                    Err(err) => (None, Some(format!("{err:#}"))),
                };
                PairResult { index, ref_path: e.ref_path, deg_path: e.deg_path, metrics, error }
            }
            Err(err) => PairResult {
                index,
                ref_path: String::new(),
                deg_path: String::new(),
                metrics: None,
                error: Some(format!("line {}: {err}", index + 1)),
            },
        })
        .collect();
    let n_failed = pairs.iter().filter(|p| p.error.is_some()).count();
    let report = ScoreReport { n_pairs: pairs.len(), n_failed, aggregate: aggregate(&pairs), pairs };
    write_json(&args.output, &report)?;
    for p in report.pairs.iter().filter(|p| p.error.is_some()) {
        eprintln!("pair {}: {}", p.index, p.error.as_deref().unwrap_or_default());
    }
    for (k, s) in &report.aggregate {
        println!("{k:>9}: {:.4} ± {:.4} (n={})", s.mean, s.std, s.count);
    }
    if n_failed == report.n_pairs {
        bail!("all {n_failed} pairs failed");
    }
    Ok(report)
}

use serde::{Deserialize, Serialize};

use super::{fwsegsnr, mag_l1, mcd, mel_loss, stoi, wer_cer};
use crate::error::Result;
use crate::signal::{align_pair, stft, AudioBuffer};

/// STFT used for the magnitude L1 term.
const MAG_WINDOW: usize = 512;
const MAG_HOP: usize = 128;

/// Scores for one reference/degraded pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub fwsegsnr: f64,
    /// Clamped to [0, 1].
    pub stoi: f64,
    pub mcd: f64,
    pub mel_loss: f64,
    pub mag_l1: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wer: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cer: Option<f64>,
}

impl MetricsReport {
    /// `(name, value)` for every present metric, in report order.
    pub fn fields(&self) -> Vec<(&'static str, f64)> {
        let mut v = vec![
            ("fwsegsnr", self.fwsegsnr),
            ("stoi", self.stoi),
            ("mcd", self.mcd),
            ("mel_loss", self.mel_loss),
            ("mag_l1", self.mag_l1),
        ];
        v.extend(self.wer.map(|x| ("wer", x)));
        v.extend(self.cer.map(|x| ("cer", x)));
        v
    }
}

/// Computes every audio metric, plus WER/CER when transcripts are given.
pub fn score_pair(
    reference: &AudioBuffer,
    degraded: &AudioBuffer,
    texts: Option<(&str, &str)>,
) -> Result<MetricsReport> {
    let (r, d) = align_pair(reference, degraded)?;
    let (wer, cer) = match texts {
        Some((rt, ht)) => {
            let (w, c) = wer_cer(rt, ht)?;
            (Some(w), Some(c))
        }
        None => (None, None),
    };
    Ok(MetricsReport {
        fwsegsnr: fwsegsnr(&r, &d)?,
        stoi: stoi(&r, &d)?.clamp(0.0, 1.0),
        mcd: mcd(&r, &d)?,
        mel_loss: mel_loss(&r, &d)?,
        mag_l1: mag_l1(&stft(&r, MAG_WINDOW, MAG_HOP)?.magnitude(), &stft(&d, MAG_WINDOW, MAG_HOP)?.magnitude())?,
        wer,
        cer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::speechlike::{utterance, UtteranceSpec};

    #[test]
    fn identity_report() {
        let x = utterance(&UtteranceSpec { seed: 2, sample_rate: 8000.0, ..Default::default() });
        let r = score_pair(&x, &x, Some(("hello world", "hello world"))).unwrap();
        assert_eq!(r.fwsegsnr, 35.0);
        assert!(r.stoi >= 0.99);
        assert_eq!((r.mcd, r.mel_loss, r.mag_l1), (0.0, 0.0, 0.0));
        assert_eq!((r.wer, r.cer), (Some(0.0), Some(0.0)));
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<MetricsReport>(&json).unwrap(), r);
    }

    #[test]
    fn no_text_omits_fields() {
        let x = utterance(&UtteranceSpec { seed: 2, sample_rate: 8000.0, ..Default::default() });
        let r = score_pair(&x, &x, None).unwrap();
        assert!(!serde_json::to_string(&r).unwrap().contains("wer"));
        assert_eq!(r.fields().len(), 5);
    }
}

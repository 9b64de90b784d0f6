//! Reference/degraded speech quality metrics.

mod fwsegsnr;
mod mcd;
mod report;
mod spectral;
mod stoi;
mod text;

pub use fwsegsnr::{fwsegsnr, FWSEG_MAX_DB, FWSEG_MIN_DB};
pub use mcd::{mcd, mfcc};
pub use report::{score_pair, MetricsReport};
pub use spectral::{mag_l1, mel_loss, LOG_MEL_FLOOR};
pub use stoi::stoi;
pub use text::{cer, edit_distance, wer, wer_cer};

//! Recovering surface vibration from IF captures.
//!
//! Range-FFT per chirp, pick the strongest non-DC range bin, unwrap its phase
//! across chirps, clean the duty-cycle outliers and convert phase to metres.

mod pipeline;
mod preprocess;
mod range;

pub use pipeline::{extract_vibration, extract_vibration_with, Extraction, ExtractOptions};
pub use preprocess::{remove_beginning_outlier, remove_periodic_outliers, OUTLIER_SIGMAS};
pub use range::{extract_phase_series, phase_to_displacement, range_fft, select_target_bin, RangeProfile};

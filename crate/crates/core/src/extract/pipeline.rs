use serde::{Deserialize, Serialize};

use super::{
    extract_phase_series, phase_to_displacement, range_fft, remove_beginning_outlier,
    remove_periodic_outliers, select_target_bin,
};
use crate::error::Result;
use crate::radar::{IfCapture, VibrationTrace};

/// Knobs of the extraction pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtractOptions {
    /// Run the beginning and periodic outlier stages.
    pub preprocess: bool,
    /// Samples searched for the beginning outlier; `None` means one frame.
    pub guard_len: Option<usize>,
    /// Neighbours per side averaged in place of a frame-start sample.
    pub neighbor_half_width: usize,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        Self {
            preprocess: true,
            guard_len: None,
            neighbor_half_width: 1,
        }
    }
}

/// Recovered vibration plus what the pipeline decided along the way.
#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    pub trace: VibrationTrace,
    pub target_bin: usize,
    pub target_range_m: f64,
    /// Unwrapped (and, if enabled, cleaned) target phase in radians.
    pub phase: Vec<f64>,
}

/// Range-FFT → target bin → unwrapped phase → outlier removal → metres,
/// with default options.
pub fn extract_vibration(cap: &IfCapture) -> Result<VibrationTrace> {
    extract_vibration_with(cap, &ExtractOptions::default()).map(|e| e.trace)
}

pub fn extract_vibration_with(cap: &IfCapture, opts: &ExtractOptions) -> Result<Extraction> {
    let cfg = cap.config();
    let profile = range_fft(cap);
    let bin = select_target_bin(&profile)?;
    let mut phase = extract_phase_series(&profile, bin)?;
    if opts.preprocess {
        let guard = opts.guard_len.unwrap_or(cfg.chirps_per_frame);
        phase = remove_beginning_outlier(&phase, guard);
        phase = remove_periodic_outliers(&phase, cfg.chirps_per_frame, opts.neighbor_half_width);
    }
    let displacement = phase_to_displacement(&phase, cfg.wavelength())?;
    Ok(Extraction {
        trace: VibrationTrace::new(displacement, cfg.sampling_rate())?,
        target_bin: bin,
        target_range_m: bin as f64 * profile.bin_size_m,
        phase,
    })
}

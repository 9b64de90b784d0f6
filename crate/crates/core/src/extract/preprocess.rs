//! Removal of the duty-cycle phase outliers.

use crate::signal::mean_and_std;

/// Deviation, in population standard deviations, beyond which a sample in
/// the guard window counts as the beginning outlier.
pub const OUTLIER_SIGMAS: f64 = 3.0;

/// Three-sigma cleanup of the start of a trace.
///
/// Mean and standard deviation come from the samples after the first
/// `guard_len`; any guard-window sample further than 3σ from that mean is
/// replaced by the mean. Samples after the guard window are never touched,
/// and a trace no longer than the guard window is returned as is.
pub fn remove_beginning_outlier(x: &[f64], guard_len: usize) -> Vec<f64> {
    let mut out = x.to_vec();
    if x.len() < 3 || guard_len >= x.len() {
        return out;
    }
    let guard = guard_len;
    let (mean, std) = mean_and_std(&x[guard..]);
    let limit = OUTLIER_SIGMAS * std;
    for v in &mut out[..guard] {
        if (*v - mean).abs() > limit {
            *v = mean;
        }
    }
    out
}

/// Replaces every frame-start sample (`k * chirps_per_frame`) with the mean
/// of up to `half_width` neighbours on each side.
///
/// Neighbours that are themselves frame starts, or fall off either end, are
/// skipped; a sample with no usable neighbour is left alone.
pub fn remove_periodic_outliers(x: &[f64], chirps_per_frame: usize, half_width: usize) -> Vec<f64> {
    let mut out = x.to_vec();
    if chirps_per_frame < 2 || half_width == 0 {
        return out;
    }
    let n = x.len();
    for i in (0..n).step_by(chirps_per_frame) {
        let lo = i.saturating_sub(half_width);
        let hi = (i + half_width).min(n - 1);
        let (sum, count) = (lo..=hi)
            .filter(|&j| j != i && j % chirps_per_frame != 0)
            .fold((0.0, 0usize), |(s, c), j| (s + x[j], c + 1));
        if count > 0 {
            out[i] = sum / count as f64;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::TAU;

    #[test]
    fn beginning_spike_replaced_by_mean() {
        let mut x = vec![0.0; 1000];
        x[0] = 100.0;
        let y = remove_beginning_outlier(&x, 256);
        assert_eq!(y[0], 0.0);
        assert!(y.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn clean_trace_unchanged() {
        let x: Vec<f64> = (0..2048).map(|i| (TAU * 300.0 * i as f64 / 8000.0).sin()).collect();
        assert_eq!(remove_beginning_outlier(&x, 256), x);
    }

    #[test]
    fn short_trace_passthrough() {
        assert_eq!(remove_beginning_outlier(&[1.0, 100.0], 1), vec![1.0, 100.0]);
    }

    #[test]
    fn impulse_train_removed() {
        let mut x = vec![0.0; 256 * 8];
        for k in 0..8 {
            x[k * 256] = 5.0;
        }
        let y = remove_periodic_outliers(&x, 256, 8);
        assert!(y.iter().all(|&v| v == 0.0));
        let y1 = remove_periodic_outliers(&x, 256, 1);
        assert!(y1.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn local_mean_error_on_a_tone() {
        // Mean of the two adjacent samples of a sinusoid is cos(ω)·x[i]; the
        // worst-case change is (1 - cos ω) of the amplitude. Index 0 only has a
        // right neighbour, bounded by 2 sin(ω/2).
        let fs = 8000.0;
        let f = 500.0;
        let x: Vec<f64> = (0..256 * 20).map(|i| (TAU * f * i as f64 / fs + 0.3).sin()).collect();
        let y = remove_periodic_outliers(&x, 256, 1);
        let w = TAU * f / fs;
        let worst = x.iter().zip(&y).skip(1).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let bound = 1.0 - w.cos();
        assert!(worst <= bound + 1e-12, "{worst} > {bound}");
        assert!((x[0] - y[0]).abs() <= 2.0 * (w / 2.0).sin() + 1e-12);
        let rms_change = (x.iter().zip(&y).map(|(a, b)| (a - b).powi(2)).sum::<f64>() / x.len() as f64).sqrt();
        let rms = (0.5f64).sqrt();
        assert!(rms_change / rms < 0.05, "relative RMS change {}", rms_change / rms);
    }

    #[test]
    fn boundary_uses_one_sided_window() {
        let x: Vec<f64> = (0..20).map(|i| i as f64).collect();
        let y = remove_periodic_outliers(&x, 10, 2);
        // index 0: neighbours 1 and 2
        assert_eq!(y[0], 1.5);
        // index 10: neighbours 8, 9, 11, 12
        assert_eq!(y[10], 10.0);
        assert_eq!(remove_periodic_outliers(&[3.0], 4, 2), vec![3.0]);
    }

    #[test]
    fn only_frame_starts_and_guard_change() {
        let mut x: Vec<f64> = (0..256 * 10).map(|i| (i as f64 * 0.37).sin()).collect();
        x[0] = 50.0;
        let guard = 256;
        let a = remove_beginning_outlier(&x, guard);
        let b = remove_periodic_outliers(&a, 256, 8);
        let changed = x.iter().zip(&b).filter(|(p, q)| p != q).count();
        assert!(changed <= 10 + guard);
        for (i, (p, q)) in x.iter().zip(&b).enumerate() {
            if p != q {
                assert!(i < guard || i % 256 == 0, "index {i} changed");
            }
        }
    }

    proptest! {
        #[test]
        fn beginning_removal_idempotent(
            xs in prop::collection::vec(-10.0f64..10.0, 3..600),
            spike in -1e3f64..1e3,
            guard in 0usize..300,
        ) {
            let mut xs = xs;
            xs[0] += spike;
            let once = remove_beginning_outlier(&xs, guard);
            let twice = remove_beginning_outlier(&once, guard);
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn periodic_removal_idempotent(
            xs in prop::collection::vec(-10.0f64..10.0, 1..600),
            cpf in 2usize..40,
            hw in 1usize..10,
        ) {
            let once = remove_periodic_outliers(&xs, cpf, hw);
            let twice = remove_periodic_outliers(&once, cpf, hw);
            prop_assert_eq!(once, twice);
        }
    }
}

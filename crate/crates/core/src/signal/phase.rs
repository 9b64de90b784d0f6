use std::f64::consts::{PI, TAU};

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_to_pi(x: f64) -> f64 {
    let mut r = x.rem_euclid(TAU);
    if r > PI {
        r -= TAU;
    }
    r
}

/// One-dimensional phase unwrapping.
///
/// Each successive difference is wrapped into `(-pi, pi]` and accumulated, so
/// the output differs from the input by an integer multiple of 2π at every
/// sample.
pub fn unwrap_phase(phases: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(phases.len());
    let Some(&first) = phases.first() else {
        return out;
    };
    out.push(first);
    // Track the integer number of turns added so far rather than accumulating
    // wrapped differences; keeps out[i] - phases[i] an exact multiple of 2π.
    let mut turns = 0.0f64;
    for w in phases.windows(2) {
        let raw = w[1] - w[0];
        let wrapped = wrap_to_pi(raw);
        turns += ((wrapped - raw) / TAU).round();
        out.push(w[1] + turns * TAU);
    }
    out
}

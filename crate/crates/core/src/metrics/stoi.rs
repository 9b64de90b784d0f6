use ndarray::{s, Array2, Axis};
use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::signal::{align_pair, resample, AudioBuffer};

const FS: f64 = 10_000.0;
const N_FRAME: usize = 256;
const NFFT: usize = 512;
const NUM_BANDS: usize = 15;
const MIN_FREQ: f64 = 150.0;
/// Frames per intermediate-intelligibility segment (384 ms).
const N: usize = 30;
const BETA_DB: f64 = -15.0;
const DYN_RANGE_DB: f64 = 40.0;

/// `hanning(n + 2)[1:-1]`: symmetric Hann without the zero end points.
fn stoi_window(n: usize) -> Vec<f64> {
    (1..=n)
        .map(|i| 0.5 - 0.5 * (std::f64::consts::TAU * i as f64 / (n + 1) as f64).cos())
        .collect()
}

fn frame_starts(len: usize, win: usize, hop: usize) -> impl Iterator<Item = usize> {
    (0..len.saturating_sub(win)).step_by(hop)
}

/// Drops frames of `x` more than 40 dB below its loudest frame (and the
/// matching frames of `y`), then overlap-adds the survivors.
fn remove_silent_frames(x: &[f64], y: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let hop = N_FRAME / 2;
    let w = stoi_window(N_FRAME);
    let frame = |s: &[f64], i: usize| -> Vec<f64> { w.iter().zip(&s[i..i + N_FRAME]).map(|(a, b)| a * b).collect() };
    let starts: Vec<usize> = frame_starts(x.len(), N_FRAME, hop).collect();
    let xf: Vec<Vec<f64>> = starts.iter().map(|&i| frame(x, i)).collect();
    let yf: Vec<Vec<f64>> = starts.iter().map(|&i| frame(y, i)).collect();
    let energy: Vec<f64> = xf
        .iter()
        .map(|f| 20.0 * (f.iter().map(|v| v * v).sum::<f64>().sqrt() + f64::EPSILON).log10())
        .collect();
    let max = energy.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let keep: Vec<usize> = (0..xf.len()).filter(|&i| max - DYN_RANGE_DB - energy[i] < 0.0).collect();
    let ola = |frames: &[Vec<f64>]| {
        let mut out = vec![0.0; if keep.is_empty() { 0 } else { (keep.len() - 1) * hop + N_FRAME }];
        for (j, &i) in keep.iter().enumerate() {
            for (o, v) in out[j * hop..j * hop + N_FRAME].iter_mut().zip(&frames[i]) {
                *o += v;
            }
        }
        out
    };
    (ola(&xf), ola(&yf))
}

/// One-third-octave band matrix `[15, NFFT / 2 + 1]`.
fn third_octave_bands() -> Array2<f64> {
    let f: Vec<f64> = (0..=NFFT / 2).map(|k| k as f64 * FS / NFFT as f64).collect();
    let nearest = |target: f64| {
        let mut best = 0;
        for (i, v) in f.iter().enumerate() {
            if (v - target).powi(2) < (f[best] - target).powi(2) {
                best = i;
            }
        }
        best
    };
    let mut obm = Array2::zeros((NUM_BANDS, f.len()));
    for b in 0..NUM_BANDS {
        let k = b as f64;
        let lo = nearest(MIN_FREQ * 2f64.powf((2.0 * k - 1.0) / 6.0));
        let hi = nearest(MIN_FREQ * 2f64.powf((2.0 * k + 1.0) / 6.0));
        obm.slice_mut(s![b, lo..hi]).fill(1.0);
    }
    obm
}

/// Band envelopes `[15, frames]`.
fn band_envelopes(x: &[f64], obm: &Array2<f64>) -> Array2<f64> {
    let hop = N_FRAME / 2;
    let w = stoi_window(N_FRAME);
    let fft = FftPlanner::new().plan_fft_forward(NFFT);
    let starts: Vec<usize> = frame_starts(x.len(), N_FRAME, hop).collect();
    let mut power = Array2::zeros((NFFT / 2 + 1, starts.len()));
    let mut buf = vec![Complex64::default(); NFFT];
    for (t, &i) in starts.iter().enumerate() {
        buf.iter_mut().for_each(|z| *z = Complex64::default());
        for (z, (a, b)) in buf.iter_mut().zip(w.iter().zip(&x[i..i + N_FRAME])) {
            z.re = a * b;
        }
        fft.process(&mut buf);
        for k in 0..=NFFT / 2 {
            power[[k, t]] = buf[k].norm_sqr();
        }
    }
    obm.dot(&power).mapv(f64::sqrt)
}

fn l2(v: ndarray::ArrayView1<f64>) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

/// Short-time objective intelligibility, raw (nominally in [-1, 1]).
///
/// Both signals are resampled to 10 kHz, frames more than 40 dB below the
/// loudest reference frame are removed, and clipped normalised correlations
/// of one-third-octave envelopes over 384 ms segments are averaged.
pub fn stoi(reference: &AudioBuffer, degraded: &AudioBuffer) -> Result<f64> {
    let (r, d) = align_pair(reference, degraded)?;
    let (r, d) = if r.sample_rate() == FS { (r, d) } else { (resample(&r, FS)?, resample(&d, FS)?) };
    let (x, y) = remove_silent_frames(r.samples(), d.samples());
    let obm = third_octave_bands();
    let xt = band_envelopes(&x, &obm);
    let yt = band_envelopes(&y, &obm);
    let frames = xt.ncols();
    if frames < N {
        return Err(Error::InputTooShort(format!(
            "STOI needs {N} non-silent frames (about 384 ms of speech), got {frames}"
        )));
    }
    let clip = 10f64.powf(-BETA_DB / 20.0);
    let mut total = 0.0;
    for m in N..=frames {
        let xs = xt.slice(s![.., m - N..m]);
        let ys = yt.slice(s![.., m - N..m]);
        for b in 0..NUM_BANDS {
            let xb = xs.index_axis(Axis(0), b);
            let yb = ys.index_axis(Axis(0), b);
            let g = l2(xb) / (l2(yb) + f64::EPSILON);
            let yp: Vec<f64> = yb.iter().zip(xb).map(|(yv, xv)| (yv * g).min(xv * (1.0 + clip))).collect();
            let ym = yp.iter().sum::<f64>() / N as f64;
            let xm = xb.sum() / N as f64;
            let yc: Vec<f64> = yp.iter().map(|v| v - ym).collect();
            let xc: Vec<f64> = xb.iter().map(|v| v - xm).collect();
            let yn = yc.iter().map(|v| v * v).sum::<f64>().sqrt() + f64::EPSILON;
            let xn = xc.iter().map(|v| v * v).sum::<f64>().sqrt() + f64::EPSILON;
            total += yc.iter().zip(&xc).map(|(a, b)| a / yn * b / xn).sum::<f64>();
        }
    }
    Ok(total / ((frames - N + 1) * NUM_BANDS) as f64)
}

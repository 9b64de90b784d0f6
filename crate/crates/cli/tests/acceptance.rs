//! Acceptance suite: one PASS/FAIL line per criterion, each within its
//! wall-clock budget. Exits non-zero if any criterion fails.

use std::f64::consts::{LN_10, PI, TAU};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use mmvib_cli::commands::{run_sweep, SweepParam};
use mmvib_cli::{pipeline, PipelineConfig};
use mmvib_core::extract::{extract_vibration_with, ExtractOptions};
use mmvib_core::io::write_wav;
use mmvib_core::metrics::{edit_distance, fwsegsnr, mcd, mel_loss, stoi, wer_cer};
use mmvib_core::radar::{
    forced_response_amplitude, inject_artifacts, simulate_if_frames, ChirpConfig, SceneParams, SurfaceMaterial,
    VibrationTrace,
};
use mmvib_core::rng::rng_for;
use mmvib_core::signal::spectrum::{band_power, dominant_tone, log_log_slope, welch_psd, windowed_spectrum};
use mmvib_core::signal::{mean_and_std, zscore, zscore_normalize};
use mmvib_core::speechlike::{utterance, UtteranceSpec};
use mmvib_core::synth::{gen_gaussian_noise, gen_purple_noise, synthesize_mmvib, SynthesisConfig};
use mmvib_core::AudioBuffer;
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn clip(seed: u64, secs: f64, rate: f64) -> AudioBuffer {
    utterance(&UtteranceSpec { seed, duration_s: secs, sample_rate: rate, ..Default::default() })
}

fn add_noise(x: &AudioBuffer, seed: u64, gain: f64) -> AudioBuffer {
    let n = gen_gaussian_noise(x.len(), x.sample_rate(), seed).unwrap();
    AudioBuffer::new(x.samples().iter().zip(n.samples()).map(|(a, b)| a + gain * b).collect(), x.sample_rate()).unwrap()
}

fn tone_trace(f: f64, amp: f64, frames: usize) -> VibrationTrace {
    let cfg = ChirpConfig::default();
    let fs = cfg.sampling_rate();
    let n = frames * cfg.chirps_per_frame;
    VibrationTrace::new((0..n).map(|i| amp * (TAU * f * i as f64 / fs).sin()).collect(), fs).unwrap()
}

fn c1_resonance() -> Outcome {
    let mut rng = rng_for(1, 0);
    let mut worst_steps = 0.0f64;
    let mut worst_static = 0.0f64;
    for _ in 0..50 {
        let m: f64 = 10f64.powf(rng.random_range(-5.0..-1.0));
        let k: f64 = 10f64.powf(rng.random_range(2.0..6.0));
        // light damping keeps the true peak w_n sqrt(1 - 2ζ²) inside one step
        let zeta: f64 = rng.random_range(1e-3..1e-2);
        let c = 2.0 * zeta * (k * m).sqrt();
        let mat = SurfaceMaterial::new(m, k, c, 1.0).map_err(|e| e.to_string())?;
        let w_n = (k / m).sqrt();
        let points = 10_000;
        let step = 2.0 * w_n / (points - 1) as f64;
        let (mut best_w, mut best) = (0.0, f64::NEG_INFINITY);
        for i in 0..points {
            let w = i as f64 * step;
            let x = forced_response_amplitude(&mat, 1.0, w).map_err(|e| e.to_string())?;
            if x > best {
                best = x;
                best_w = w;
            }
        }
        worst_steps = worst_steps.max((best_w - w_n).abs() / step);
        let x0 = forced_response_amplitude(&mat, 2.5, 0.0).map_err(|e| e.to_string())?;
        worst_static = worst_static.max((x0 * k / 2.5 - 1.0).abs());
    }
    ensure(worst_steps <= 1.0, format!("peak off by {worst_steps:.2} grid steps"))?;
    ensure(worst_static <= 1e-12, format!("|X(0) k / F0 - 1| = {worst_static:e}"))?;
    Ok(format!("max peak offset {worst_steps:.2} steps, max static error {worst_static:.1e}"))
}

fn c2_round_trip() -> Outcome {
    let cfg = ChirpConfig::default();
    let scene = SceneParams { range_m: 1.5, noise_floor_db: -40.0, ..Default::default() };
    let mut notes = Vec::new();
    for (i, f) in [100.0, 500.0, 1000.0, 2000.0, 3500.0].into_iter().enumerate() {
        let vib = tone_trace(f, 1e-6, 64);
        let cap = simulate_if_frames(&cfg, &vib, &scene, i as u64).map_err(|e| e.to_string())?;
        let ex = extract_vibration_with(&cap, &ExtractOptions::default()).map_err(|e| e.to_string())?;
        let t = dominant_tone(ex.trace.displacement(), cfg.sampling_rate()).ok_or("no tone")?;
        let rel = (t.amplitude - 1e-6).abs() / 1e-6;
        ensure((t.frequency - f).abs() <= t.resolution, format!("{f} Hz recovered at {} Hz", t.frequency))?;
        ensure(rel < 0.10, format!("{f} Hz amplitude error {:.1}%", 100.0 * rel))?;
        notes.push(format!("{f}:{:.2}%", 100.0 * rel));
    }
    Ok(format!("amplitude errors {}", notes.join(" ")))
}

fn c3_preprocessing() -> Outcome {
    let cfg = ChirpConfig::default();
    let fs = cfg.sampling_rate();
    let scene = SceneParams { noise_floor_db: -40.0, ..Default::default() };
    let f0 = 440.0;
    let vib = tone_trace(f0, 1e-6, 250);
    let clean = simulate_if_frames(&cfg, &vib, &scene, 11).map_err(|e| e.to_string())?;
    let dirty = inject_artifacts(&clean, 10.0, 6.0, 11).map_err(|e| e.to_string())?;
    let run = |cap, preprocess| {
        extract_vibration_with(cap, &ExtractOptions { preprocess, ..Default::default() })
            .map(|e| e.trace.displacement().to_vec())
            .map_err(|e| e.to_string())
    };
    let (with, without) = (run(&dirty, true)?, run(&dirty, false)?);
    let frame_rate = cfg.frame_rate();
    let harmonics = |x: &[f64]| {
        let spec = windowed_spectrum(x);
        let df = fs / x.len() as f64;
        (1..)
            .map(|k| k as f64 * frame_rate)
            .take_while(|f| *f < fs / 2.0)
            .filter(|f| (f - f0).abs() > 5.0)
            .map(|f| spec[(f / df).round() as usize].norm_sqr())
            .sum::<f64>()
    };
    let drop_db = 10.0 * (harmonics(&without) / harmonics(&with)).log10();
    ensure(drop_db >= 20.0, format!("frame-rate harmonics drop only {drop_db:.1} dB"))?;

    let (a, b) = (run(&clean, true)?, run(&clean, false)?);
    let diff = a.iter().zip(&b).map(|(p, q)| (p - q).powi(2)).sum::<f64>().sqrt();
    let norm = b.iter().map(|q| q * q).sum::<f64>().sqrt();
    let distortion = diff / norm;
    ensure(distortion < 0.05, format!("clean distortion {:.2}%", 100.0 * distortion))?;
    Ok(format!("harmonic drop {drop_db:.1} dB, clean distortion {:.2}% RMS", 100.0 * distortion))
}

fn c4_sampling_tradeoff() -> Outcome {
    let base = ChirpConfig::default();
    let doubled = base.with_chirps_per_frame(2 * base.chirps_per_frame);
    ensure(doubled.frame_period == base.frame_period && doubled.slope == base.slope, "frame period or slope changed")?;
    let b_ratio = doubled.bandwidth() / base.bandwidth();
    ensure((b_ratio - 0.5).abs() < 1e-12, format!("bandwidth ratio {b_ratio}"))?;
    ensure(doubled.range_resolution() == 2.0 * base.range_resolution(), "resolution not exactly doubled")?;

    let src = clip(5, 1.5, 16000.0);
    let rows = run_sweep(&PipelineConfig::default(), SweepParam::ChirpsPerFrame, &["256".into(), "512".into()], &src)
        .map_err(|e| e.to_string())?;
    if let Some(e) = rows.iter().find_map(|r| r.error.clone()) {
        return Err(e);
    }
    let res: Vec<f64> = rows.iter().map(|r| r.range_resolution_m.unwrap()).collect();
    let bw: Vec<f64> = rows.iter().map(|r| r.bandwidth_hz.unwrap()).collect();
    ensure(res[1] == 2.0 * res[0], format!("sweep resolutions {res:?}"))?;
    ensure((bw[1] / bw[0] - 0.5).abs() < 1e-12, format!("sweep bandwidths {bw:?}"))?;
    Ok(format!("resolution {:.5} m -> {:.5} m, bandwidth {:.2} GHz -> {:.2} GHz", res[0], res[1], bw[0] / 1e9, bw[1] / 1e9))
}

fn c5_noise_colors() -> Outcome {
    let n = 1 << 16;
    let fs = 8000.0;
    let (mut slopes, mut ratios) = (Vec::new(), Vec::new());
    for seed in 0..20 {
        let p = gen_purple_noise(n, fs, seed).map_err(|e| e.to_string())?;
        let (f, psd) = welch_psd(p.samples(), fs, 1024);
        slopes.push(log_log_slope(&f, &psd, 0.05 * fs, 0.45 * fs));
        let g = gen_gaussian_noise(n, fs, seed).map_err(|e| e.to_string())?;
        let (f, psd) = welch_psd(g.samples(), fs, 1024);
        ratios.push(band_power(&f, &psd, 0.0, fs / 4.0) / band_power(&f, &psd, fs / 4.0, fs / 2.0 + 1.0));
    }
    let smin = slopes.iter().cloned().fold(f64::INFINITY, f64::min);
    let smax = slopes.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let rmin = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let rmax = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    ensure(smin >= 18.0 && smax <= 22.0, format!("slopes [{smin:.2}, {smax:.2}] dB/decade"))?;
    ensure(rmin >= 0.8 && rmax <= 1.25, format!("flatness [{rmin:.3}, {rmax:.3}]"))?;
    Ok(format!("purple slope [{smin:.2}, {smax:.2}] dB/decade, Gaussian flatness [{rmin:.3}, {rmax:.3}]"))
}

fn c6_synthesis() -> Outcome {
    let mut worst = 0.0f64;
    for seed in 0..20 {
        let x = clip(seed, 3.0, 8000.0);
        let zero = SynthesisConfig { alpha: 0.0, beta: 0.0, seed, jitter: false };
        let y = synthesize_mmvib(&x, &zero).map_err(|e| e.to_string())?;
        ensure(y.samples() == zscore(x.samples()).unwrap().as_slice(), "alpha=beta=0 is not the z-score")?;
        let cfg = SynthesisConfig { seed, ..Default::default() };
        let (_, std) = mean_and_std(synthesize_mmvib(&x, &cfg).map_err(|e| e.to_string())?.samples());
        let expect = 1.0 + cfg.alpha.powi(2) + cfg.beta.powi(2);
        worst = worst.max((std * std - expect).abs() / expect);
    }
    ensure(worst <= 0.05, format!("variance off by {:.2}%", 100.0 * worst))?;
    Ok(format!("exact noise-free limit, worst variance error {:.2}%", 100.0 * worst))
}

fn c7_identities() -> Outcome {
    let mut min_stoi = f64::INFINITY;
    for seed in 0..10 {
        let x = clip(100 + seed, 3.0, 8000.0);
        let fw = fwsegsnr(&x, &x).map_err(|e| e.to_string())?;
        let st = stoi(&x, &x).map_err(|e| e.to_string())?;
        let mc = mcd(&x, &x).map_err(|e| e.to_string())?;
        let ml = mel_loss(&x, &x).map_err(|e| e.to_string())?;
        let (w, c) = wer_cer("the quick brown fox", "the quick brown fox").map_err(|e| e.to_string())?;
        ensure(fw == 35.0, format!("fwsegsnr {fw}"))?;
        ensure(st >= 0.99, format!("stoi {st}"))?;
        ensure(mc.abs() <= 1e-9 && ml.abs() <= 1e-9, format!("mcd {mc}, mel {ml}"))?;
        ensure(w == 0.0 && c == 0.0, "wer/cer")?;
        min_stoi = min_stoi.min(st);
    }
    Ok(format!("10 clips, min stoi {min_stoi:.4}"))
}

/// Violations of the nested-noise ordering over 20 seeds at a fixed `alpha`.
fn ordering_violations(alpha: f64) -> Result<Vec<String>, String> {
    let betas = [0.1, 0.3, 1.0];
    let mut bad = Vec::new();
    for seed in 0..20 {
        let x = clip(200 + seed, 3.0, 8000.0);
        let z = zscore_normalize(&x).map_err(|e| e.to_string())?;
        let mut rows = Vec::new();
        for beta in betas {
            let cfg = SynthesisConfig { alpha, beta, seed, jitter: false };
            let d = synthesize_mmvib(&x, &cfg).map_err(|e| e.to_string())?;
            rows.push((
                mcd(&z, &d).map_err(|e| e.to_string())?,
                mel_loss(&z, &d).map_err(|e| e.to_string())?,
                fwsegsnr(&z, &d).map_err(|e| e.to_string())?,
            ));
        }
        for w in rows.windows(2) {
            if w[0].0 >= w[1].0 {
                bad.push(format!("seed {seed} mcd {:.3}->{:.3}", w[0].0, w[1].0));
            }
            if w[0].1 >= w[1].1 {
                bad.push(format!("seed {seed} mel {:.3}->{:.3}", w[0].1, w[1].1));
            }
            if w[0].2 <= w[1].2 {
                bad.push(format!("seed {seed} fwsegsnr {:.3}->{:.3}", w[0].2, w[1].2));
            }
        }
    }
    Ok(bad)
}

fn c8_ordering() -> Outcome {
    let bad = ordering_violations(0.0)?;
    ensure(bad.is_empty(), format!("{} violations: {}", bad.len(), bad.join(", ")))?;
    // Reported, not gated: with the purple term present the shape-only
    // metrics (mcd, fwsegsnr) can improve as white noise flattens the tilt.
    let with_purple = ordering_violations(1.0)?.len();
    Ok(format!("20 seeds x 3 betas, 0 violations (alpha=1 for reference: {with_purple} violations)"))
}

// Brute-force oracles written from the metric definitions, sharing no code
// with the library beyond the audio buffer.
mod oracle {
    use super::*;

    pub fn dft_mag(frame: &[f64], n_fft: usize, bins: usize, power: bool) -> Vec<f64> {
        (0..bins)
            .map(|k| {
                let (mut re, mut im) = (0.0, 0.0);
                for (n, x) in frame.iter().enumerate() {
                    let a = -TAU * (k * n) as f64 / n_fft as f64;
                    re += x * a.cos();
                    im += x * a.sin();
                }
                let p = re * re + im * im;
                if power { p } else { p.sqrt() }
            })
            .collect()
    }

    const CF: [f64; 25] = [
        50.0, 120.0, 190.0, 260.0, 330.0, 400.0, 470.0, 540.0, 617.372, 703.378, 798.717, 904.128, 1020.38, 1148.30,
        1288.72, 1442.54, 1610.70, 1794.16, 1993.93, 2211.08, 2446.71, 2701.97, 2978.04, 3276.17, 3597.63,
    ];
    const BW: [f64; 25] = [
        70.0, 70.0, 70.0, 70.0, 70.0, 70.0, 70.0, 77.3724, 86.0056, 95.3398, 105.411, 116.256, 127.914, 140.423,
        153.823, 168.154, 183.457, 199.776, 217.153, 235.631, 255.255, 276.072, 298.126, 321.465, 346.136,
    ];

    pub fn fwsegsnr(r: &[f64], d: &[f64], fs: f64) -> f64 {
        let win = (0.025 * fs).round() as usize;
        let hop = (0.010 * fs).round() as usize;
        let mut n_fft = 1;
        while n_fft < 2 * win {
            n_fft *= 2;
        }
        let half = n_fft / 2;
        let window: Vec<f64> = (1..=win).map(|i| 0.5 * (1.0 - (TAU * i as f64 / (win as f64 + 1.0)).cos())).collect();
        let floor_gain = (-30.0f64 / (2.0 * 2.303)).exp();
        let mut weights = vec![vec![0.0; half]; 25];
        for b in 0..25 {
            let f0 = (CF[b] / (fs / 2.0) * half as f64).floor();
            let bw = BW[b] / (fs / 2.0) * half as f64;
            for (j, w) in weights[b].iter_mut().enumerate() {
                let g = (-11.0 * ((j as f64 - f0) / bw).powi(2) + (70.0f64 / BW[b]).ln()).exp();
                *w = if g > floor_gain { g } else { 0.0 };
            }
        }
        let spec = |x: &[f64]| {
            let f: Vec<f64> = x.iter().zip(&window).map(|(a, b)| a * b).collect();
            let m = dft_mag(&f, n_fft, half, false);
            let s: f64 = m.iter().sum();
            m.into_iter().map(|v| v / s).collect::<Vec<_>>()
        };
        let mut scores = Vec::new();
        let mut start = 0;
        while start + win <= r.len() {
            let (cs, ps) = (spec(&r[start..start + win]), spec(&d[start..start + win]));
            let (mut num, mut den) = (0.0, 0.0);
            for w in &weights {
                let ce: f64 = (0..half).map(|j| w[j] * cs[j]).sum();
                let pe: f64 = (0..half).map(|j| w[j] * ps[j]).sum();
                let snr = 10.0 * (ce * ce / (ce - pe).powi(2).max(f64::EPSILON)).log10();
                num += ce.powf(0.2) * snr;
                den += ce.powf(0.2);
            }
            scores.push((num / den).clamp(-10.0, 35.0));
            start += hop;
        }
        scores.iter().sum::<f64>() / scores.len() as f64
    }

    fn mel(f: f64) -> f64 {
        2595.0 * (1.0 + f / 700.0).log10()
    }

    fn mel_inv(m: f64) -> f64 {
        700.0 * (10f64.powf(m / 2595.0) - 1.0)
    }

    fn mel_cepstra(x: &[f64], fs: f64) -> Vec<Vec<f64>> {
        let win = (0.025 * fs).round() as usize;
        let hop = (0.010 * fs).round() as usize;
        let mut n_fft = 1;
        while n_fft < win {
            n_fft *= 2;
        }
        let bins = n_fft / 2 + 1;
        let k = 26;
        let edges: Vec<f64> = (0..k + 2).map(|i| mel_inv(mel(fs / 2.0) * i as f64 / (k + 1) as f64)).collect();
        let tri = |b: usize, f: f64| {
            let (lo, mid, hi) = (edges[b], edges[b + 1], edges[b + 2]);
            if f > lo && f < mid {
                (f - lo) / (mid - lo)
            } else if f >= mid && f < hi {
                (hi - f) / (hi - mid)
            } else {
                0.0
            }
        };
        let mut out = Vec::new();
        let mut start = 0;
        while start + win <= x.len() {
            let frame: Vec<f64> = (0..win)
                .map(|i| x[start + i] * (0.54 - 0.46 * (TAU * i as f64 / (win - 1) as f64).cos()))
                .collect();
            let p = dft_mag(&frame, n_fft, bins, true);
            let logmel: Vec<f64> = (0..k)
                .map(|b| {
                    let e: f64 = (0..bins).map(|j| tri(b, j as f64 * fs / n_fft as f64) * p[j]).sum();
                    e.max(1e-30).ln()
                })
                .collect();
            out.push(
                (0..=13)
                    .map(|n| {
                        (0..k).map(|b| logmel[b] * (PI * n as f64 * (b as f64 + 0.5) / k as f64).cos()).sum::<f64>()
                            / k as f64
                    })
                    .collect(),
            );
            start += hop;
        }
        out
    }

    pub fn mcd(r: &[f64], d: &[f64], fs: f64) -> f64 {
        let (a, b) = (mel_cepstra(r, fs), mel_cepstra(d, fs));
        let per: Vec<f64> = a
            .iter()
            .zip(&b)
            .map(|(x, y)| 10.0 / LN_10 * (2.0 * (1..=13).map(|i| (x[i] - y[i]).powi(2)).sum::<f64>()).sqrt())
            .collect();
        per.iter().sum::<f64>() / per.len() as f64
    }

    pub fn levenshtein<T: PartialEq>(a: &[T], b: &[T]) -> usize {
        let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
        for (i, row) in d.iter_mut().enumerate() {
            row[0] = i;
        }
        for j in 0..=b.len() {
            d[0][j] = j;
        }
        for i in 1..=a.len() {
            for j in 1..=b.len() {
                let sub = d[i - 1][j - 1] + usize::from(a[i - 1] != b[j - 1]);
                d[i][j] = sub.min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
            }
        }
        d[a.len()][b.len()]
    }
}

fn c9_oracles() -> Outcome {
    let mut rng = rng_for(9, 0);
    let words = ["a", "the", "radar", "speech", "film", "noise", "vibration", "sound"];
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-12);
    let (mut worst_fw, mut worst_mcd, mut worst_txt) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..20 {
        let x = clip(300 + i, 1.0, 8000.0);
        let d = if i % 4 == 3 { clip(400 + i, 1.0, 8000.0) } else { add_noise(&x, i, rng.random_range(0.001..0.3)) };
        let fs = x.sample_rate();
        worst_fw = worst_fw.max(rel(fwsegsnr(&x, &d).unwrap(), oracle::fwsegsnr(x.samples(), d.samples(), fs)));
        worst_mcd = worst_mcd.max(rel(mcd(&x, &d).unwrap(), oracle::mcd(x.samples(), d.samples(), fs)));

        let (nr, nh) = (rng.random_range(1..12), rng.random_range(0..12));
        let r: Vec<&str> = (0..nr).map(|_| words[rng.random_range(0..words.len())]).collect();
        let h: Vec<&str> = (0..nh).map(|_| words[rng.random_range(0..words.len())]).collect();
        let (rs, hs) = (r.join(" "), h.join(" "));
        let (w, c) = wer_cer(&rs, &hs).unwrap();
        let rc: Vec<char> = rs.chars().collect();
        let hc: Vec<char> = hs.chars().collect();
        let ow = oracle::levenshtein(&r, &h) as f64 / r.len() as f64;
        let oc = oracle::levenshtein(&rc, &hc) as f64 / rc.len() as f64;
        worst_txt = worst_txt.max((w - ow).abs()).max((c - oc).abs());
        ensure(edit_distance(&r, &h) == oracle::levenshtein(&r, &h), "edit distance mismatch")?;
    }
    ensure(worst_fw <= 1e-6, format!("fwsegsnr relative error {worst_fw:e}"))?;
    ensure(worst_mcd <= 1e-6, format!("mcd relative error {worst_mcd:e}"))?;
    ensure(worst_txt <= 1e-12, format!("wer/cer error {worst_txt:e}"))?;
    Ok(format!("max rel. error fwsegsnr {worst_fw:.1e}, mcd {worst_mcd:.1e}, wer/cer {worst_txt:.1e}"))
}

fn c10_pipeline_quality() -> Outcome {
    let cfg = PipelineConfig::default();
    let mut values = Vec::new();
    for seed in 0..10 {
        let src = clip(500 + seed, 4.0, 16000.0);
        let (_, report) = pipeline::radar_round_trip(&cfg, &src).map_err(|e| format!("{e:#}"))?;
        values.push(report.mcd);
    }
    let good = values.iter().filter(|v| **v < 8.0).count();
    let list: Vec<String> = values.iter().map(|v| format!("{v:.2}")).collect();
    ensure(good >= 8, format!("only {good}/10 below 8 dB: {}", list.join(" ")))?;
    Ok(format!("{good}/10 clips with MCD < 8 dB ({})", list.join(" ")))
}

fn c11_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    let bin = env!("CARGO_BIN_EXE_mmvib");
    let run = |args: &[&str]| -> Result<(), String> {
        let out = Command::new(bin).args(args).env_remove("MMVIB_SEED").output().map_err(|e| e.to_string())?;
        ensure(out.status.success(), format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)))
    };
    let p = |name: &str| d.join(name).to_str().unwrap().to_string();
    write_wav(d.join("src.wav"), &clip(600, 2.0, 16000.0)).map_err(|e| e.to_string())?;
    write_wav(d.join("other.wav"), &clip(601, 2.0, 16000.0)).map_err(|e| e.to_string())?;
    std::fs::write(d.join("in.jsonl"), "{\"path\": \"src.wav\"}\n{\"path\": \"other.wav\"}\n").map_err(|e| e.to_string())?;

    let mut outputs: Vec<Vec<String>> = Vec::new();
    for pass in 0..2 {
        let t = |name: &str| p(&format!("{pass}_{name}"));
        run(&["simulate", "--input", &p("src.wav"), "--output", &t("cap"), "--seed", "21"])?;
        run(&["extract", "--input", &t("cap"), "--output", &t("vib.wav")])?;
        run(&["synth", "--manifest", &p("in.jsonl"), "--output-dir", &t("ds"), "--seed", "21", "--jitter"])?;
        let pairs = format!(
            "{{\"ref_path\": \"src.wav\", \"deg_path\": \"{pass}_vib.wav\"}}\n{{\"ref_path\": \"src.wav\", \"deg_path\": \"other.wav\"}}\n"
        );
        std::fs::write(d.join(format!("{pass}_pairs.jsonl")), pairs).map_err(|e| e.to_string())?;
        run(&["score", "--manifest", &t("pairs.jsonl"), "--output", &t("score.json")])?;
        run(&["sweep", "--input", &p("src.wav"), "--param", "range_m", "--values", "1.0,1.5", "--output", &t("sweep.json"), "--seed", "21"])?;
        outputs.push(vec![
            t("cap"),
            t("cap.artifacts.json"),
            t("vib.wav"),
            t("ds/degraded/000000.wav"),
            t("ds/degraded/000001.wav"),
            t("ds/clean/000001.wav"),
            t("sweep.json"),
            t("sweep.csv"),
        ]);
    }
    for (a, b) in outputs[0].iter().zip(&outputs[1]) {
        let (x, y) = (std::fs::read(a).map_err(|e| e.to_string())?, std::fs::read(b).map_err(|e| e.to_string())?);
        ensure(x == y, format!("{} differs between runs", Path::new(a).file_name().unwrap().to_string_lossy()))?;
    }
    // Sidecars and manifests embed output paths, so compare them with the
    // per-run prefix removed.
    for name in ["vib.wav.json", "ds/manifest.jsonl", "score.json"] {
        let a = std::fs::read_to_string(p(&format!("0_{name}"))).map_err(|e| e.to_string())?.replace("0_", "");
        let b = std::fs::read_to_string(p(&format!("1_{name}"))).map_err(|e| e.to_string())?.replace("1_", "");
        ensure(a == b, format!("{name} differs between runs"))?;
    }
    Ok(format!("{} primary outputs byte-identical across 5 commands", outputs[0].len()))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 11] = [
        ("resonance law", 1, c1_resonance),
        ("round-trip fidelity", 10, c2_round_trip),
        ("preprocessing efficacy", 10, c3_preprocessing),
        ("sampling-rate tradeoff", 5, c4_sampling_tradeoff),
        ("noise colors", 10, c5_noise_colors),
        ("synthesis contract", 5, c6_synthesis),
        ("metric identities", 30, c7_identities),
        ("metric ordering", 60, c8_ordering),
        ("oracle equivalence", 60, c9_oracles),
        ("MCD below 8 dB on the simulated pipeline", 120, c10_pipeline_quality),
        ("determinism", 30, c11_determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let elapsed = t.elapsed();
        let over = elapsed > Duration::from_secs(*budget);
        let (status, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; exceeded {budget} s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {status} {name}: {detail} [{:.2} s / {budget} s]", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

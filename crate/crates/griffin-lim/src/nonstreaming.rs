//! Whole-signal Griffin-Lim.

use dsp_core::{batch_istft, batch_stft, deemphasis, ComplexFrame};
use specpipe::{log_expand, LogMagSpectrogram};

use crate::engine::{phase_of, polar_frame};
use crate::error::GlError;

fn expand_frames(spec: &LogMagSpectrogram, log_delta: f64) -> Vec<Vec<f64>> {
    spec.frames
        .iter()
        .map(|frame| {
            let log_f64: Vec<f64> = frame.iter().map(|&v| v as f64).collect();
            log_expand(&log_f64, log_delta)
        })
        .collect()
}

fn materialize(mags: &[Vec<f64>], phases: &[Vec<f64>]) -> Vec<ComplexFrame> {
    mags.iter().zip(phases).map(|(m, p)| polar_frame(m, p)).collect()
}

/// Inconsistency of the current phase estimate, in dB: the Frobenius
/// distance between the re-analyzed magnitudes and the targets, relative to
/// the target norm, floored at −300 and capped at +300.
fn convergence_db(target: &[Vec<f64>], reanalyzed: &[ComplexFrame]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (mags, bins) in target.iter().zip(reanalyzed) {
        for (&m, bin) in mags.iter().zip(bins) {
            num += (bin.norm() - m).powi(2);
            den += m * m;
        }
    }
    if num == 0.0 {
        return -300.0;
    }
    if den == 0.0 {
        return 300.0;
    }
    (10.0 * (num / den).log10()).clamp(-300.0, 300.0)
}

/// Whole-signal Griffin-Lim with a per-iteration convergence trace.
///
/// Starts from zero phase, alternates synthesis and re-analysis n_iters
/// times while pinning magnitudes to the targets, then synthesizes and
/// de-emphasizes the final estimate. The trace holds one dB value per
/// iteration, measured between the re-analyzed magnitudes and the targets
/// before the phases are recombined.
pub fn gl_nonstreaming_traced(
    spec: &LogMagSpectrogram,
    n_iters: usize,
    preemph_coef: f64,
    log_delta: f64,
) -> Result<(Vec<f64>, Vec<f64>), GlError> {
    if spec.num_frames() == 0 {
        return Err(dsp_core::DspError::EmptySpectrogram.into());
    }
    let expected = spec.num_bins();
    for frame in &spec.frames {
        if frame.len() != expected {
            return Err(dsp_core::DspError::BinCountMismatch { expected, got: frame.len() }.into());
        }
    }
    let cfg = spec.stream_config(preemph_coef, log_delta);
    cfg.validate()?;
    let mags = expand_frames(spec, log_delta);
    let mut phases = vec![vec![0.0; spec.num_bins()]; spec.num_frames()];
    let mut trace = Vec::with_capacity(n_iters);
    for _ in 0..n_iters {
        let x = batch_istft(&materialize(&mags, &phases), &cfg)?;
        let reanalyzed = batch_stft(&x, &cfg)?;
        trace.push(convergence_db(&mags, &reanalyzed));
        for (row, bins) in phases.iter_mut().zip(&reanalyzed) {
            for (slot, bin) in row.iter_mut().zip(bins) {
                *slot = phase_of(*bin);
            }
        }
    }
    let x = batch_istft(&materialize(&mags, &phases), &cfg)?;
    let out = deemphasis(&x, preemph_coef)?;
    Ok((out, trace))
}

/// Whole-signal Griffin-Lim without the trace.
pub fn gl_nonstreaming(
    spec: &LogMagSpectrogram,
    n_iters: usize,
    preemph_coef: f64,
    log_delta: f64,
) -> Result<Vec<f64>, GlError> {
    gl_nonstreaming_traced(spec, n_iters, preemph_coef, log_delta).map(|(out, _)| out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dsp_core::StreamConfig;
    use specpipe::analyze;

    fn multi_sine(seconds: f64, cfg: &StreamConfig) -> Vec<f64> {
        let len = (seconds * cfg.sample_rate as f64) as usize;
        (0..len)
            .map(|i| {
                let t = i as f64 / cfg.sample_rate as f64;
                let edge = i.min(len - 1 - i) as f64;
                let fade = if edge < 320.0 {
                    0.5 * (1.0 - (std::f64::consts::PI * edge / 320.0).cos())
                } else {
                    1.0
                };
                fade * (0.4 * (std::f64::consts::TAU * 220.0 * t).sin()
                    + 0.25 * (std::f64::consts::TAU * 660.0 * t).sin()
                    + 0.15 * (std::f64::consts::TAU * 1760.0 * t).sin()
                    + 0.08 * (std::f64::consts::TAU * 3520.0 * t).sin())
            })
            .collect()
    }

    #[test]
    fn deep_silence_reconstructs_exact_zeros() {
        let spec = LogMagSpectrogram {
            sample_rate: 16_000,
            fft_size: 2048,
            frame_size: 800,
            frame_step: 200,
            frames: vec![vec![-50.0; 1025]; 6],
        };
        for n_iters in [0, 1, 5] {
            let out = gl_nonstreaming(&spec, n_iters, 0.97, 1e-2).unwrap();
            assert_eq!(out.len(), 5 * 200 + 800);
            assert!(out.iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn analyzed_silence_reconstructs_exact_zeros() {
        let cfg = StreamConfig::default();
        let spec = analyze(&vec![0.0; 1600], &cfg).unwrap();
        let out = gl_nonstreaming(&spec, 3, cfg.preemph_coef, cfg.log_delta).unwrap();
        assert!(out.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn empty_spectrogram_is_rejected() {
        let spec = LogMagSpectrogram {
            sample_rate: 16_000,
            fft_size: 2048,
            frame_size: 800,
            frame_step: 200,
            frames: vec![],
        };
        assert!(gl_nonstreaming(&spec, 1, 0.97, 1e-2).is_err());
    }

    #[test]
    fn convergence_trace_is_monotone_and_improves_past_three_iterations() {
        let cfg = StreamConfig::default();
        let x = multi_sine(1.0, &cfg);
        let spec = analyze(&x, &cfg).unwrap();
        let (_, trace) = gl_nonstreaming_traced(&spec, 70, cfg.preemph_coef, cfg.log_delta).unwrap();
        assert_eq!(trace.len(), 70);
        for i in 1..trace.len() {
            assert!(
                trace[i] <= trace[i - 1] + 1e-9,
                "iteration {i}: {} rose above {}",
                trace[i],
                trace[i - 1]
            );
        }
        assert!(
            trace[69] < trace[2],
            "70 iterations ({}) should beat 3 ({})",
            trace[69],
            trace[2]
        );
    }

    #[test]
    fn output_length_matches_the_overlap_add_law() {
        let cfg = StreamConfig::default();
        let x = multi_sine(0.5, &cfg);
        let spec = analyze(&x, &cfg).unwrap();
        let out = gl_nonstreaming(&spec, 2, cfg.preemph_coef, cfg.log_delta).unwrap();
        assert_eq!(out.len(), (spec.num_frames() - 1) * 200 + 800);
    }
}

//! Waveform to log-magnitude spectrogram.

use dsp_core::{batch_stft, preemphasis, StreamConfig};

use crate::error::SpecError;
use crate::spectrogram::{log_compress, LogMagSpectrogram};

/// Runs the analysis chain: pre-emphasis, short-time transform, magnitude,
/// log compression.
pub fn analyze(x: &[f64], cfg: &StreamConfig) -> Result<LogMagSpectrogram, SpecError> {
    let emphasized = preemphasis(x, cfg.preemph_coef)?;
    let spectra = batch_stft(&emphasized, cfg)?;
    let mut frames = Vec::with_capacity(spectra.len());
    for spectrum in &spectra {
        let mag: Vec<f64> = spectrum.iter().map(|b| b.norm()).collect();
        let logmag = log_compress(&mag, cfg.log_delta)?;
        frames.push(logmag.into_iter().map(|v| v as f32).collect());
    }
    Ok(LogMagSpectrogram {
        sample_rate: cfg.sample_rate,
        fft_size: cfg.fft_size,
        frame_size: cfg.frame_size,
        frame_step: cfg.frame_step,
        frames,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use dsp_core::hann_window;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn silence_analyzes_to_log_delta_everywhere() {
        let cfg = StreamConfig::default();
        let spec = analyze(&vec![0.0; 1000], &cfg).unwrap();
        assert_eq!(spec.num_frames(), 2);
        let floor = cfg.log_delta.ln() as f32;
        for frame in &spec.frames {
            assert_eq!(frame.len(), 1025);
            assert!(frame.iter().all(|&v| v == floor));
        }
    }

    #[test]
    fn frame_count_follows_the_framing_formula() {
        let cfg = StreamConfig::default();
        let spec = analyze(&vec![0.25; 1200], &cfg).unwrap();
        assert_eq!(spec.num_frames(), 3);
        assert_eq!(spec.num_bins(), 1025);
    }

    #[test]
    fn bin_centered_sinusoid_matches_brute_force_magnitude() {
        let cfg = StreamConfig::default();
        let k = 128;
        let freq = k as f64 * cfg.sample_rate as f64 / cfg.fft_size as f64;
        let x: Vec<f64> = (0..1000)
            .map(|i| (std::f64::consts::TAU * freq * i as f64 / cfg.sample_rate as f64).sin())
            .collect();
        let spec = analyze(&x, &cfg).unwrap();
        let frame = &spec.frames[0];
        let peak = frame
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        assert_eq!(peak, k);

        let emphasized = dsp_core::preemphasis(&x, cfg.preemph_coef).unwrap();
        let window = hann_window(cfg.frame_size).unwrap();
        let mut re = 0.0;
        let mut im = 0.0;
        for i in 0..cfg.frame_size {
            let phase = -std::f64::consts::TAU * (k * i) as f64 / cfg.fft_size as f64;
            let v = emphasized[i] * window[i];
            re += v * phase.cos();
            im += v * phase.sin();
        }
        let oracle = ((re * re + im * im) as f64).sqrt();
        let expected = (oracle + cfg.log_delta).ln() as f32;
        assert!(
            (frame[k] - expected).abs() <= 1e-6 * expected.abs(),
            "frame value {} vs oracle {}",
            frame[k],
            expected
        );
    }

    #[test]
    fn analyze_is_deterministic() {
        let cfg = StreamConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let x: Vec<f64> = (0..3200).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let a = analyze(&x, &cfg).unwrap();
        let b = analyze(&x, &cfg).unwrap();
        assert_eq!(a, b);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn outputs_satisfy_the_container_invariants(seed in 0u64..1_000_000, len in 800usize..2400) {
            let cfg = StreamConfig::default();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let spec = analyze(&x, &cfg).unwrap();
            spec.check_frame_widths().unwrap();
            let floor = cfg.log_delta.ln() as f32;
            for frame in &spec.frames {
                for &v in frame {
                    prop_assert!(v.is_finite());
                    prop_assert!(v >= floor);
                }
            }
        }
    }
}

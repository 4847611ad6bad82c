//! Batch short-time transforms with weighted overlap-add synthesis.

use realfft::num_complex::Complex64;

use crate::config::StreamConfig;
use crate::error::DspError;
use crate::fft::RealFft;
use crate::window::hann_window;

/// One half-spectrum column: fft_size/2 + 1 complex bins.
pub type ComplexFrame = Vec<Complex64>;

/// Floor applied to the squared-window overlap-add sum before division, so
/// sequence edges where the window tapers to ~0 cannot blow up the output.
pub const NORM_FLOOR: f64 = 1e-8;

/// Forward short-time transform.
///
/// Frames start at sample 0 and advance by frame_step with no centering; a
/// trailing partial frame is dropped. Each frame is Hann-windowed and
/// zero-padded to fft_size.
pub fn batch_stft(x: &[f64], cfg: &StreamConfig) -> Result<Vec<ComplexFrame>, DspError> {
    cfg.validate()?;
    if x.len() < cfg.frame_size {
        return Err(DspError::InputTooShort { needed: cfg.frame_size, got: x.len() });
    }
    let window = hann_window(cfg.frame_size)?;
    let fft = RealFft::new(cfg.fft_size);
    let num_frames = (x.len() - cfg.frame_size) / cfg.frame_step + 1;
    let mut padded = vec![0.0; cfg.fft_size];
    let mut frames = Vec::with_capacity(num_frames);
    for f in 0..num_frames {
        let start = f * cfg.frame_step;
        for i in 0..cfg.frame_size {
            padded[i] = x[start + i] * window[i];
        }
        frames.push(fft.forward(&padded));
    }
    Ok(frames)
}

/// Squared-window overlap-add sum over the frames actually present, so the
/// taper at sequence edges is accounted for rather than assumed periodic.
fn ola_norm(num_frames: usize, cfg: &StreamConfig, window: &[f64]) -> Vec<f64> {
    let mut norm = vec![0.0; (num_frames - 1) * cfg.frame_step + cfg.frame_size];
    for f in 0..num_frames {
        let start = f * cfg.frame_step;
        for (i, w) in window.iter().enumerate() {
            norm[start + i] += w * w;
        }
    }
    norm
}

/// Inverse short-time transform via weighted overlap-add.
///
/// Each frame is inverse-transformed, truncated to frame_size, multiplied by
/// the synthesis Hann window, overlap-added at frame_step, and the result is
/// divided pointwise by the squared-window sum (floored at [`NORM_FLOOR`]).
pub fn batch_istft(frames: &[ComplexFrame], cfg: &StreamConfig) -> Result<Vec<f64>, DspError> {
    cfg.validate()?;
    if frames.is_empty() {
        return Err(DspError::EmptySpectrogram);
    }
    let num_bins = cfg.num_bins();
    for frame in frames {
        if frame.len() != num_bins {
            return Err(DspError::BinCountMismatch { expected: num_bins, got: frame.len() });
        }
    }
    let window = hann_window(cfg.frame_size)?;
    let fft = RealFft::new(cfg.fft_size);
    let out_len = (frames.len() - 1) * cfg.frame_step + cfg.frame_size;
    let mut acc = vec![0.0; out_len];
    for (f, frame) in frames.iter().enumerate() {
        let time = fft.inverse(frame);
        let start = f * cfg.frame_step;
        for i in 0..cfg.frame_size {
            acc[start + i] += time[i] * window[i];
        }
    }
    let norm = ola_norm(frames.len(), cfg, &window);
    for (v, n) in acc.iter_mut().zip(&norm) {
        *v /= n.max(NORM_FLOOR);
    }
    Ok(acc)
}

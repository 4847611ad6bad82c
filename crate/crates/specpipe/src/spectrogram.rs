//! Log-magnitude spectrogram container and the elementwise compression pair.

use dsp_core::StreamConfig;

use crate::error::SpecError;

/// Time-major sequence of log-compressed magnitude frames.
///
/// Frames are stored as 32-bit floats, which is also their on-disk width, so
/// a save/load round trip is bitwise. The analysis constants that produced
/// the frames travel with them; the emphasis coefficient and log offset are
/// not part of the file header and are supplied by the consumer.
#[derive(Debug, Clone, PartialEq)]
pub struct LogMagSpectrogram {
    pub sample_rate: u32,
    pub fft_size: usize,
    pub frame_size: usize,
    pub frame_step: usize,
    pub frames: Vec<Vec<f32>>,
}

impl LogMagSpectrogram {
    pub fn num_bins(&self) -> usize {
        self.fft_size / 2 + 1
    }

    pub fn num_frames(&self) -> usize {
        self.frames.len()
    }

    /// Rebuilds the full stream config by pairing the carried header fields
    /// with the two constants the file format does not store.
    pub fn stream_config(&self, preemph_coef: f64, log_delta: f64) -> StreamConfig {
        StreamConfig {
            sample_rate: self.sample_rate,
            fft_size: self.fft_size,
            frame_size: self.frame_size,
            frame_step: self.frame_step,
            preemph_coef,
            log_delta,
        }
    }

    /// Errors if any frame's width disagrees with the header geometry.
    pub fn check_frame_widths(&self) -> Result<(), SpecError> {
        let expected = self.num_bins();
        for (i, frame) in self.frames.iter().enumerate() {
            if frame.len() != expected {
                return Err(SpecError::FrameWidthMismatch {
                    frame: i,
                    expected,
                    got: frame.len(),
                });
            }
        }
        Ok(())
    }
}

/// Elementwise ln(m + delta). Rejects negative magnitudes.
pub fn log_compress(mag: &[f64], delta: f64) -> Result<Vec<f64>, SpecError> {
    if let Some(index) = mag.iter().position(|&m| m < 0.0) {
        return Err(SpecError::NegativeMagnitude { index, value: mag[index] });
    }
    Ok(mag.iter().map(|&m| (m + delta).ln()).collect())
}

/// Elementwise exp(v) − delta, clamped below at zero.
pub fn log_expand(logmag: &[f64], delta: f64) -> Vec<f64> {
    logmag.iter().map(|&v| (v.exp() - delta).max(0.0)).collect()
}

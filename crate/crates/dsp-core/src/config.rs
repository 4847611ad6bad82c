//! Stream-wide analysis constants shared by every pipeline stage.

use crate::error::DspError;

/// Analysis/synthesis constants for one audio stream.
///
/// The defaults describe 16 kHz audio framed into 50 ms windows advancing by
/// 12.5 ms, transformed with a 2048-point FFT, pre-emphasized with
/// coefficient 0.97 and log-compressed with an offset of 1e-2.
#[derive(Debug, Clone, PartialEq)]
pub struct StreamConfig {
    pub sample_rate: u32,
    pub fft_size: usize,
    pub frame_size: usize,
    pub frame_step: usize,
    pub preemph_coef: f64,
    pub log_delta: f64,
}

impl Default for StreamConfig {
    fn default() -> Self {
        Self {
            sample_rate: 16_000,
            fft_size: 2048,
            frame_size: 800,
            frame_step: 200,
            preemph_coef: 0.97,
            log_delta: 1e-2,
        }
    }
}

impl StreamConfig {
    /// Number of half-spectrum bins produced per frame.
    pub fn num_bins(&self) -> usize {
        self.fft_size / 2 + 1
    }

    /// Samples shared between consecutive frames.
    pub fn overlap(&self) -> usize {
        self.frame_size - self.frame_step
    }

    pub fn validate(&self) -> Result<(), DspError> {
        if self.sample_rate == 0 {
            return Err(DspError::InvalidConfig("sample_rate must be nonzero".into()));
        }
        if self.frame_step == 0 {
            return Err(DspError::InvalidConfig("frame_step must be nonzero".into()));
        }
        if self.frame_step > self.frame_size {
            return Err(DspError::InvalidConfig(format!(
                "frame_step {} exceeds frame_size {}",
                self.frame_step, self.frame_size
            )));
        }
        if self.frame_size > self.fft_size {
            return Err(DspError::InvalidConfig(format!(
                "frame_size {} exceeds fft_size {}",
                self.frame_size, self.fft_size
            )));
        }
        if self.fft_size % 2 != 0 {
            return Err(DspError::InvalidConfig(format!(
                "fft_size must be even, got {}",
                self.fft_size
            )));
        }
        if self.frame_size % self.frame_step != 0 {
            return Err(DspError::InvalidConfig(format!(
                "frame_size {} is not a multiple of frame_step {}",
                self.frame_size, self.frame_step
            )));
        }
        if !(0.0..1.0).contains(&self.preemph_coef) {
            return Err(DspError::InvalidCoefficient(self.preemph_coef));
        }
        if !(self.log_delta > 0.0) {
            return Err(DspError::InvalidConfig(format!(
                "log_delta must be positive, got {}",
                self.log_delta
            )));
        }
        Ok(())
    }
}

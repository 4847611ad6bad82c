//! Streaming inverse STFT: one spectral frame in, one hop of audio out.

use realfft::num_complex::Complex64;

use crate::config::StreamConfig;
use crate::error::DspError;
use crate::fft::RealFft;
use crate::stft::NORM_FLOOR;
use crate::window::hann_window;

/// Streaming weighted-overlap-add synthesizer.
///
/// Each pushed frame is inverse-transformed, windowed and added into a
/// pending buffer of frame_size samples; the first frame_step samples are
/// then complete (no later frame can reach them) and are emitted. The
/// remaining frame_size − frame_step samples stay pending, which is exactly
/// the algorithmic delay of this stage. A parallel buffer accumulates the
/// squared-window sum so normalization sees the same edge taper as the
/// batch transform; the concatenation of all pushes plus [`flush`] equals
/// [`crate::batch_istft`] on the same frames.
///
/// [`flush`]: StreamingIstft::flush
pub struct StreamingIstft {
    cfg: StreamConfig,
    window: Vec<f64>,
    fft: RealFft,
    acc: Vec<f64>,
    norm: Vec<f64>,
}

impl StreamingIstft {
    pub fn new(cfg: &StreamConfig) -> Result<Self, DspError> {
        cfg.validate()?;
        Ok(Self {
            cfg: cfg.clone(),
            window: hann_window(cfg.frame_size)?,
            fft: RealFft::new(cfg.fft_size),
            acc: vec![0.0; cfg.frame_size],
            norm: vec![0.0; cfg.frame_size],
        })
    }

    /// Samples of lag between a pushed frame's start and the end of the hop
    /// emitted for it: frame_size − frame_step.
    pub fn delay_samples(&self) -> usize {
        self.cfg.frame_size - self.cfg.frame_step
    }

    /// Pushes one half-spectrum frame and returns frame_step finished samples.
    pub fn push(&mut self, frame: &[Complex64]) -> Result<Vec<f64>, DspError> {
        let num_bins = self.cfg.num_bins();
        if frame.len() != num_bins {
            return Err(DspError::BinCountMismatch { expected: num_bins, got: frame.len() });
        }
        let time = self.fft.inverse(frame);
        for i in 0..self.cfg.frame_size {
            let w = self.window[i];
            self.acc[i] += time[i] * w;
            self.norm[i] += w * w;
        }
        let step = self.cfg.frame_step;
        let mut out = Vec::with_capacity(step);
        for i in 0..step {
            out.push(self.acc[i] / self.norm[i].max(NORM_FLOOR));
        }
        self.acc.copy_within(step.., 0);
        self.norm.copy_within(step.., 0);
        let tail = self.cfg.frame_size - step;
        self.acc[tail..].fill(0.0);
        self.norm[tail..].fill(0.0);
        Ok(out)
    }

    /// Emits the pending frame_size − frame_step samples and resets the
    /// stream for reuse.
    pub fn flush(&mut self) -> Vec<f64> {
        let pending = self.cfg.frame_size - self.cfg.frame_step;
        let mut out = Vec::with_capacity(pending);
        for i in 0..pending {
            out.push(self.acc[i] / self.norm[i].max(NORM_FLOOR));
        }
        self.acc.fill(0.0);
        self.norm.fill(0.0);
        out
    }
}

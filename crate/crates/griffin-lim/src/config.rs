//! Sliding-window configuration for streaming Griffin-Lim.

use dsp_core::StreamConfig;

use crate::error::GlError;

/// Streaming Griffin-Lim knobs on top of the shared stream constants.
///
/// With the defaults (w_size 4, ind 2) the window holds two committed past
/// frames, the frame being emitted, and one lookahead frame: one hop of
/// algorithmic lookahead, plus the overlap delay of the streaming synthesis
/// stage, totals exactly one frame of delay.
#[derive(Debug, Clone, PartialEq)]
pub struct GlConfig {
    /// Frames held in the sliding window.
    pub w_size: usize,
    /// Iterations run per pushed frame (or over the whole signal in the
    /// non-streaming solver).
    pub n_iters: usize,
    /// Window position that is emitted; positions below it are committed,
    /// positions above it are lookahead.
    pub ind: usize,
    pub base: StreamConfig,
}

impl Default for GlConfig {
    fn default() -> Self {
        Self { w_size: 4, n_iters: 4, ind: 2, base: StreamConfig::default() }
    }
}

impl GlConfig {
    pub fn validate(&self) -> Result<(), GlError> {
        self.base.validate()?;
        if self.w_size == 0 {
            return Err(GlError::InvalidWindow("w_size must be nonzero".into()));
        }
        if self.ind >= self.w_size {
            return Err(GlError::InvalidWindow(format!(
                "ind {} must be below w_size {}",
                self.ind, self.w_size
            )));
        }
        Ok(())
    }

    /// Frames ahead of the emitted position.
    pub fn lookahead_frames(&self) -> usize {
        self.w_size - 1 - self.ind
    }

    /// Samples of algorithmic lookahead contributed by the sliding window.
    pub fn lookahead_delay_samples(&self) -> usize {
        self.lookahead_frames() * self.base.frame_step
    }

    /// Lookahead plus the overlap delay of streaming synthesis.
    pub fn total_delay_samples(&self) -> usize {
        self.lookahead_delay_samples() + self.base.frame_size - self.base.frame_step
    }

    /// Samples spanned by the sliding window's overlap-add region.
    pub fn span_len(&self) -> usize {
        (self.w_size - 1) * self.base.frame_step + self.base.frame_size
    }
}

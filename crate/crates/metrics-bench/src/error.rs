//! Error type for metrics and the benchmark harness.

use dsp_core::DspError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error(transparent)]
    Dsp(#[from] DspError),
    #[error("spectrogram shapes differ: reference {ref_frames}x{ref_bins}, estimate {est_frames}x{est_bins}")]
    ShapeMismatch { ref_frames: usize, ref_bins: usize, est_frames: usize, est_bins: usize },
    #[error("signal lengths differ: reference {ref_len}, estimate {est_len}")]
    LengthMismatch { ref_len: usize, est_len: usize },
    #[error("reference is all zero")]
    AllZeroReference,
    #[error("spectrogram has no frames")]
    EmptySpectrogram,
    #[error("shift of {shift} samples exceeds the estimate length {est_len}")]
    ShiftTooLarge { shift: usize, est_len: usize },
    #[error("{frames} frames leave nothing to measure after {warmup} warmup hops")]
    NoMeasuredHops { frames: usize, warmup: usize },
    #[error("vocoder: {0}")]
    Vocoder(String),
}

//! Error type shared across the DSP substrate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DspError {
    #[error("invalid stream config: {0}")]
    InvalidConfig(String),
    #[error("window length must be at least 2, got {0}")]
    WindowTooShort(usize),
    #[error("emphasis coefficient must lie in [0, 1), got {0}")]
    InvalidCoefficient(f64),
    #[error("non-finite sample at index {0}")]
    NonFiniteInput(usize),
    #[error("input holds {got} samples but at least {needed} are required")]
    InputTooShort { needed: usize, got: usize },
    #[error("spectrogram holds no frames")]
    EmptySpectrogram,
    #[error("frame holds {got} bins but the config expects {expected}")]
    BinCountMismatch { expected: usize, got: usize },
}

//! Errors for the analysis pipeline and spectrogram files.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error(transparent)]
    Dsp(#[from] dsp_core::DspError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("negative magnitude {value} at bin {index}")]
    NegativeMagnitude { index: usize, value: f64 },
    #[error("spectrogram frame {frame} holds {got} bins but the header implies {expected}")]
    FrameWidthMismatch { frame: usize, expected: usize, got: usize },
    #[error("bad magic {got:?}, expected \"LMS1\"")]
    BadMagic { got: [u8; 4] },
    #[error("unsupported spectrogram file version {0}")]
    UnsupportedVersion(u32),
    #[error("file truncated: needed {needed} more bytes for {what}")]
    Truncated { what: &'static str, needed: usize },
    #[error("{got} trailing bytes after the spectrogram payload")]
    TrailingBytes { got: usize },
    #[error("header bin count {got} disagrees with fft_size {fft_size} (implies {expected})")]
    HeaderBinCount { fft_size: usize, expected: usize, got: usize },
}

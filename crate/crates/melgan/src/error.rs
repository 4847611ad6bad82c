//! Error type for generator construction, weight files, and inference.

use thiserror::Error;

/// Everything that can go wrong while building, loading, or running the
/// generator.
#[derive(Debug, Error)]
pub enum MelganError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("layer {index} expects {expected} input channels but the previous layer emits {got}")]
    ChannelChain { index: usize, expected: usize, got: usize },
    #[error("upsampling factor {product} does not match the frame step {frame_step}")]
    Upsampling { product: usize, frame_step: usize },
    #[error("invalid architecture: {0}")]
    InvalidArch(String),
    #[error("not a weights file (magic {0:?})")]
    BadMagic([u8; 4]),
    #[error("unsupported weights format version {0}")]
    UnsupportedVersion(u32),
    #[error("weights file truncated while reading {0}")]
    Truncated(&'static str),
    #[error("{0} trailing bytes after the last tensor")]
    TrailingBytes(usize),
    #[error("duplicate tensor {0}")]
    DuplicateTensor(String),
    #[error("tensor {0} is not part of the architecture")]
    UnknownTensor(String),
    #[error("missing tensor {0}")]
    MissingTensor(String),
    #[error("tensor {name} has shape {got:?}, expected {expected:?}")]
    ShapeMismatch { name: String, expected: Vec<usize>, got: Vec<usize> },
    #[error("tensor {0} is too large to load")]
    Oversized(String),
    #[error("tensor name of {0} bytes exceeds the format limit")]
    NameTooLong(usize),
    #[error("frame has {got} bins, the generator expects {expected}")]
    FrameWidth { expected: usize, got: usize },
}

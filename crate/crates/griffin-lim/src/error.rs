//! Errors for Griffin-Lim reconstruction.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GlError {
    #[error(transparent)]
    Dsp(#[from] dsp_core::DspError),
    #[error("invalid sliding window: {0}")]
    InvalidWindow(String),
    #[error("sliding window holds {got} frames but needs {expected}")]
    WindowUnderfull { expected: usize, got: usize },
    #[error("non-finite log-magnitude at bin {0}")]
    NonFiniteInput(usize),
}

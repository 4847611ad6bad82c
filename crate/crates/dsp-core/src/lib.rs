//! Numerical substrate for real-time spectrogram inversion: windowing,
//! framing, forward/inverse short-time Fourier transforms in batch and
//! streaming form, and the emphasis filters applied around the spectral
//! pipeline.
//!
//! Everything here runs in 64-bit arithmetic. Pure operations are stateless
//! and safe to call concurrently; the streaming types are single-owner, one
//! stream per value, and may be moved between threads between pushes.

mod config;
mod emphasis;
mod error;
mod fft;
mod stft;
mod stream;
mod window;

pub use config::StreamConfig;
pub use emphasis::{deemphasis, preemphasis, Deemphasis};
pub use error::DspError;
pub use fft::RealFft;
pub use stft::{batch_istft, batch_stft, ComplexFrame, NORM_FLOOR};
pub use stream::StreamingIstft;
pub use window::hann_window;

pub use realfft::num_complex::Complex64;

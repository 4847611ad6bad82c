//! Analysis pipeline from waveform to log-magnitude spectrogram, the
//! inverse log compression, and a compact binary interchange format for
//! spectrogram files.

mod error;
mod io;
mod pipeline;
mod spectrogram;

pub use error::SpecError;
pub use io::{load_spectrogram, save_spectrogram};
pub use pipeline::analyze;
pub use spectrogram::{log_compress, log_expand, LogMagSpectrogram};

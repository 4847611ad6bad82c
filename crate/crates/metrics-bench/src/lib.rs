//! Objective quality metrics and a latency/delay benchmark harness for
//! streaming spectrogram inversion.
//!
//! The metrics are spectral convergence (Frobenius distance between
//! magnitude spectrograms, in dB) and sample-domain SNR, plus an alignment
//! helper that drops a vocoder's documented output shift before scoring.
//! The harness drives anything implementing [`StreamingVocoder`] one frame
//! at a time, times every push single-threaded, and reports latency
//! statistics, configuration-derived delays, analytically counted state
//! memory, and the real-time factor. Seeded speech-shaped test clips live
//! in [`signals`].

mod bench;
mod error;
mod metrics;
pub mod signals;
mod vocoder;

pub use bench::{run_bench, BenchReport};
pub use error::MetricsError;
pub use metrics::{
    align_by_shift, magnitude_frames, snr, spectral_convergence, SC_FLOOR_DB, SNR_CEILING_DB,
};
pub use vocoder::{GlVocoder, MelganVocoder, NullVocoder, StreamingVocoder};

//! Griffin-Lim phase reconstruction, in two forms: a whole-signal iterative
//! solver, and a streaming state machine that commits one hop of audio per
//! input frame using a short sliding window of frames with bounded
//! lookahead.
//!
//! The streaming machine keeps its sliding window in polar form: the target
//! magnitudes are stored exactly as given and only phases are estimated, so
//! "magnitude is always the target" and "committed phases never change
//! during iterations" hold by construction rather than by approximation.

mod config;
mod engine;
mod error;
mod nonstreaming;
mod stream;

pub use config::GlConfig;
pub use engine::{phase_of, polar_frame, GlEngine};
pub use error::GlError;
pub use nonstreaming::{gl_nonstreaming, gl_nonstreaming_traced};
pub use stream::GlStream;

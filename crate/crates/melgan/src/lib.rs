//! Inference-only neural waveform generator for magnitude spectrograms.
//!
//! A stack of causal 1-D convolutions turns log-compressed magnitude frames
//! into raw audio: an input convolution over the bins, four upscale stages
//! whose transposed-convolution strides multiply to one frame step, and a
//! single-channel output convolution. Each upscale stage carries three
//! dilated residual blocks; ELU joins the stages.
//!
//! The generator runs in two equivalent modes: a batch pass over a whole
//! spectrogram and a push-per-frame stream that emits frame_step samples per
//! push from fixed-size history buffers. Weights come from .gwt files or
//! seeded random initialization; training is out of scope.

mod arch;
mod error;
mod generator;
mod layers;
mod stream;
mod weights;

pub use arch::{GeneratorArch, UpscaleSpec, RESBLOCK_DILATIONS};
pub use error::MelganError;
pub use generator::{Generator, LayerTap};
pub use stream::GeneratorStream;
pub use weights::{load_weights, random_weights, save_weights, Tensor, WeightSet};

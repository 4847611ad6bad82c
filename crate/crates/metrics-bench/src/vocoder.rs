//! A uniform push interface over every spectrogram-to-audio engine.

use std::sync::Arc;

use griffin_lim::{GlConfig, GlStream};
use melgan::{Generator, GeneratorStream};

use crate::error::MetricsError;

/// One frame in per push, samples out; delay figures are pure functions of
/// configuration so the harness can report and align without timing noise.
pub trait StreamingVocoder {
    fn name(&self) -> &str;
    fn sample_rate(&self) -> u32;
    /// Samples emitted per pushed frame.
    fn frame_step(&self) -> usize;
    /// Future input the algorithm waits for, in samples.
    fn lookahead_delay_samples(&self) -> usize;
    /// Input-to-output lag including synthesis buffering, in samples.
    fn total_delay_samples(&self) -> usize;
    /// Leading output samples to drop when pairing output with input time.
    fn output_shift_samples(&self) -> usize;
    /// Bytes of mutable streaming state.
    fn state_bytes(&self) -> usize;
    fn push_frame(&mut self, frame: &[f32]) -> Result<Vec<f64>, MetricsError>;
    fn flush(&mut self) -> Result<Vec<f64>, MetricsError>;
}

/// Sliding-window iterative phase reconstruction.
pub struct GlVocoder {
    stream: GlStream,
    name: String,
}

impl GlVocoder {
    pub fn new(cfg: &GlConfig) -> Result<Self, MetricsError> {
        let stream = GlStream::new(cfg).map_err(|e| MetricsError::Vocoder(e.to_string()))?;
        let name = format!("sgl{}", cfg.w_size - 1 - cfg.ind);
        Ok(GlVocoder { stream, name })
    }
}

impl StreamingVocoder for GlVocoder {
    fn name(&self) -> &str {
        &self.name
    }

    fn sample_rate(&self) -> u32 {
        self.stream.config().base.sample_rate
    }

    fn frame_step(&self) -> usize {
        self.stream.config().base.frame_step
    }

    fn lookahead_delay_samples(&self) -> usize {
        self.stream.lookahead_delay_samples()
    }

    fn total_delay_samples(&self) -> usize {
        self.stream.total_delay_samples()
    }

    fn output_shift_samples(&self) -> usize {
        self.stream.output_shift_samples()
    }

    fn state_bytes(&self) -> usize {
        self.stream.state_bytes()
    }

    fn push_frame(&mut self, frame: &[f32]) -> Result<Vec<f64>, MetricsError> {
        self.stream.push(frame).map_err(|e| MetricsError::Vocoder(e.to_string()))
    }

    fn flush(&mut self) -> Result<Vec<f64>, MetricsError> {
        self.stream.flush().map_err(|e| MetricsError::Vocoder(e.to_string()))
    }
}

/// Causal neural generator; zero algorithmic delay by construction.
pub struct MelganVocoder {
    stream: GeneratorStream,
    sample_rate: u32,
}

impl MelganVocoder {
    pub fn new(generator: Arc<Generator>, sample_rate: u32) -> Self {
        MelganVocoder { stream: GeneratorStream::new(generator), sample_rate }
    }
}

impl StreamingVocoder for MelganVocoder {
    fn name(&self) -> &str {
        "melgan"
    }

    fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    fn frame_step(&self) -> usize {
        self.stream.generator().arch().frame_step
    }

    fn lookahead_delay_samples(&self) -> usize {
        0
    }

    fn total_delay_samples(&self) -> usize {
        0
    }

    fn output_shift_samples(&self) -> usize {
        0
    }

    fn state_bytes(&self) -> usize {
        self.stream.state_bytes()
    }

    fn push_frame(&mut self, frame: &[f32]) -> Result<Vec<f64>, MetricsError> {
        let samples = self.stream.push(frame).map_err(|e| MetricsError::Vocoder(e.to_string()))?;
        Ok(samples.into_iter().map(f64::from).collect())
    }

    fn flush(&mut self) -> Result<Vec<f64>, MetricsError> {
        Ok(Vec::new())
    }
}

/// Emits silence with no computation; the latency floor of the harness.
pub struct NullVocoder {
    sample_rate: u32,
    frame_step: usize,
}

impl NullVocoder {
    pub fn new(sample_rate: u32, frame_step: usize) -> Self {
        NullVocoder { sample_rate, frame_step }
    }
}

impl StreamingVocoder for NullVocoder {
    fn name(&self) -> &str {
        "null"
    }

    fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    fn frame_step(&self) -> usize {
        self.frame_step
    }

    fn lookahead_delay_samples(&self) -> usize {
        0
    }

    fn total_delay_samples(&self) -> usize {
        0
    }

    fn output_shift_samples(&self) -> usize {
        0
    }

    fn state_bytes(&self) -> usize {
        0
    }

    fn push_frame(&mut self, _frame: &[f32]) -> Result<Vec<f64>, MetricsError> {
        Ok(vec![0.0; self.frame_step])
    }

    fn flush(&mut self) -> Result<Vec<f64>, MetricsError> {
        Ok(Vec::new())
    }
}

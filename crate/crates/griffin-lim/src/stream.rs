//! Streaming Griffin-Lim: one log-magnitude frame in, one audio hop out.

use dsp_core::{Deemphasis, StreamingIstft};
use specpipe::log_expand;

use crate::config::GlConfig;
use crate::engine::{polar_frame, GlEngine};
use crate::error::GlError;

/// The streaming reconstruction machine.
///
/// Each push expands the incoming log-magnitude frame, slides it into the
/// window (new frames enter with zero phase), runs the configured number of
/// window iterations, materializes the frame at the commit index and feeds
/// it to the streaming synthesis stage, then de-emphasizes the emitted hop.
///
/// Both sliding queues start zero-filled, so the first few hops reconstruct
/// the silence prior; the concatenated output trails the input timeline by
/// the configured lookahead.
pub struct GlStream {
    cfg: GlConfig,
    engine: GlEngine,
    mag_w: Vec<Vec<f64>>,
    phase_w: Vec<Vec<f64>>,
    istft: StreamingIstft,
    deemph: Deemphasis,
    frames_pushed: u64,
}

impl GlStream {
    pub fn new(cfg: &GlConfig) -> Result<Self, GlError> {
        cfg.validate()?;
        let num_bins = cfg.base.num_bins();
        Ok(Self {
            cfg: cfg.clone(),
            engine: GlEngine::new(cfg)?,
            mag_w: vec![vec![0.0; num_bins]; cfg.w_size],
            phase_w: vec![vec![0.0; num_bins]; cfg.w_size],
            istft: StreamingIstft::new(&cfg.base)?,
            deemph: Deemphasis::new(cfg.base.preemph_coef)?,
            frames_pushed: 0,
        })
    }

    pub fn config(&self) -> &GlConfig {
        &self.cfg
    }

    /// Samples of lookahead contributed by the sliding window.
    pub fn lookahead_delay_samples(&self) -> usize {
        self.cfg.lookahead_delay_samples()
    }

    /// Lookahead plus the synthesis overlap delay.
    pub fn total_delay_samples(&self) -> usize {
        self.cfg.total_delay_samples()
    }

    /// Offset of the concatenated output against the input timeline: output
    /// sample s reconstructs input sample s − shift. Only the lookahead
    /// shifts the timeline; the synthesis overlap delays emission without
    /// displacing it.
    pub fn output_shift_samples(&self) -> usize {
        self.cfg.lookahead_delay_samples()
    }

    /// Target magnitudes currently in the window, oldest first.
    pub fn window_magnitudes(&self) -> &[Vec<f64>] {
        &self.mag_w
    }

    /// Phase estimates currently in the window, oldest first. Positions
    /// below the commit index are frozen until they slide out.
    pub fn window_phases(&self) -> &[Vec<f64>] {
        &self.phase_w
    }

    /// Bytes held in floating-point state buffers, for memory reporting.
    pub fn state_bytes(&self) -> usize {
        let num_bins = self.cfg.base.num_bins();
        let queues = 2 * self.cfg.w_size * num_bins;
        let istft = 2 * self.cfg.base.frame_size;
        let tables = self.cfg.span_len() + self.cfg.base.frame_size;
        (queues + istft + tables) * std::mem::size_of::<f64>()
    }

    fn slide_in(&mut self, mag: Vec<f64>) {
        self.mag_w.rotate_left(1);
        let last = self.cfg.w_size - 1;
        self.mag_w[last] = mag;
        self.phase_w.rotate_left(1);
        self.phase_w[last].fill(0.0);
    }

    fn emit(&mut self) -> Result<Vec<f64>, GlError> {
        self.engine.gl_window_iterations(
            &self.mag_w,
            &mut self.phase_w,
            self.cfg.ind,
            self.cfg.n_iters,
        )?;
        let ind = self.cfg.ind;
        let stft_o = polar_frame(&self.mag_w[ind], &self.phase_w[ind]);
        let hop = self.istft.push(&stft_o)?;
        Ok(self.deemph.process(&hop))
    }

    /// Pushes one log-magnitude frame and returns frame_step de-emphasized
    /// samples.
    pub fn push(&mut self, logmag_frame: &[f32]) -> Result<Vec<f64>, GlError> {
        let num_bins = self.cfg.base.num_bins();
        if logmag_frame.len() != num_bins {
            return Err(dsp_core::DspError::BinCountMismatch {
                expected: num_bins,
                got: logmag_frame.len(),
            }
            .into());
        }
        if let Some(i) = logmag_frame.iter().position(|v| !v.is_finite()) {
            return Err(GlError::NonFiniteInput(i));
        }
        let log_f64: Vec<f64> = logmag_frame.iter().map(|&v| v as f64).collect();
        let mag = log_expand(&log_f64, self.cfg.base.log_delta);
        self.slide_in(mag);
        self.frames_pushed += 1;
        self.emit()
    }

    /// Drains the lookahead with zero-magnitude frames, flushes the
    /// synthesis stage, and resets the stream for reuse. Returns the
    /// trailing lookahead_frames · frame_step + frame_size − frame_step
    /// samples.
    pub fn flush(&mut self) -> Result<Vec<f64>, GlError> {
        let num_bins = self.cfg.base.num_bins();
        let mut tail = Vec::new();
        for _ in 0..self.cfg.lookahead_frames() {
            self.slide_in(vec![0.0; num_bins]);
            tail.extend(self.emit()?);
        }
        let pending = self.istft.flush();
        tail.extend(self.deemph.process(&pending));
        for row in self.mag_w.iter_mut().chain(self.phase_w.iter_mut()) {
            row.fill(0.0);
        }
        self.deemph = Deemphasis::new(self.cfg.base.preemph_coef)?;
        self.frames_pushed = 0;
        Ok(tail)
    }
}

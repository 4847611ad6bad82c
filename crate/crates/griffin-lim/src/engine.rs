//! Local overlap-add span and per-window Griffin-Lim iterations.

use dsp_core::{hann_window, Complex64, RealFft, NORM_FLOOR};

use crate::config::GlConfig;
use crate::error::GlError;

/// Phase of one complex bin, with exact zeros mapped to phase 0 so that
/// zero-magnitude bins never manufacture a phase (atan2 of signed zeros
/// would otherwise yield ±π).
pub fn phase_of(bin: Complex64) -> f64 {
    if bin.re == 0.0 && bin.im == 0.0 {
        0.0
    } else {
        bin.im.atan2(bin.re)
    }
}

/// Materializes magnitude · e^(i·phase) bin-wise.
pub fn polar_frame(mag: &[f64], phase: &[f64]) -> Vec<Complex64> {
    mag.iter()
        .zip(phase)
        .map(|(&m, &p)| Complex64::new(m * p.cos(), m * p.sin()))
        .collect()
}

/// Shared plans and precomputed tables for iterating one sliding window.
///
/// The window's frames overlap-add into a local span of
/// (w_size − 1) · frame_step + frame_size samples; the span's squared-window
/// normalization accounts only for the w_size frames present, with the usual
/// floor at the span edges.
pub struct GlEngine {
    cfg: GlConfig,
    window: Vec<f64>,
    fft: RealFft,
    span_norm: Vec<f64>,
}

impl GlEngine {
    pub fn new(cfg: &GlConfig) -> Result<Self, GlError> {
        cfg.validate()?;
        let window = hann_window(cfg.base.frame_size)?;
        let mut span_norm = vec![0.0; cfg.span_len()];
        for p in 0..cfg.w_size {
            let start = p * cfg.base.frame_step;
            for (i, w) in window.iter().enumerate() {
                span_norm[start + i] += w * w;
            }
        }
        Ok(Self {
            cfg: cfg.clone(),
            window,
            fft: RealFft::new(cfg.base.fft_size),
            span_norm,
        })
    }

    pub fn config(&self) -> &GlConfig {
        &self.cfg
    }

    /// Weighted overlap-add of the whole window into its local span.
    fn local_istft(&self, mag_w: &[Vec<f64>], phase_w: &[Vec<f64>]) -> Vec<f64> {
        let step = self.cfg.base.frame_step;
        let frame_size = self.cfg.base.frame_size;
        let mut span = vec![0.0; self.cfg.span_len()];
        for p in 0..self.cfg.w_size {
            let time = self.fft.inverse(&polar_frame(&mag_w[p], &phase_w[p]));
            let start = p * step;
            for i in 0..frame_size {
                span[start + i] += time[i] * self.window[i];
            }
        }
        for (v, n) in span.iter_mut().zip(&self.span_norm) {
            *v /= n.max(NORM_FLOOR);
        }
        span
    }

    /// Re-analyzes the span and overwrites the phases of positions ≥ from.
    fn estimate_phases(&self, span: &[f64], phase_w: &mut [Vec<f64>], from: usize) {
        let step = self.cfg.base.frame_step;
        let frame_size = self.cfg.base.frame_size;
        let mut padded = vec![0.0; self.cfg.base.fft_size];
        for p in from..self.cfg.w_size {
            let start = p * step;
            for i in 0..frame_size {
                padded[i] = span[start + i] * self.window[i];
            }
            let bins = self.fft.forward(&padded);
            for (slot, bin) in phase_w[p].iter_mut().zip(&bins) {
                *slot = phase_of(*bin);
            }
        }
    }

    fn check_window(&self, mag_w: &[Vec<f64>], phase_w: &[Vec<f64>]) -> Result<(), GlError> {
        let w_size = self.cfg.w_size;
        if mag_w.len() != w_size {
            return Err(GlError::WindowUnderfull { expected: w_size, got: mag_w.len() });
        }
        if phase_w.len() != w_size {
            return Err(GlError::WindowUnderfull { expected: w_size, got: phase_w.len() });
        }
        let num_bins = self.cfg.base.num_bins();
        for frame in mag_w.iter().chain(phase_w.iter()) {
            if frame.len() != num_bins {
                return Err(dsp_core::DspError::BinCountMismatch {
                    expected: num_bins,
                    got: frame.len(),
                }
                .into());
            }
        }
        Ok(())
    }

    /// Runs n_iters rounds of inverse/forward analysis over the sliding
    /// window, re-estimating the phases of positions ≥ ind while leaving
    /// committed phases (positions < ind) untouched. Magnitudes are never
    /// modified: recombination always pairs the stored target magnitudes
    /// with whichever phase applies.
    pub fn gl_window_iterations(
        &self,
        mag_w: &[Vec<f64>],
        phase_w: &mut [Vec<f64>],
        ind: usize,
        n_iters: usize,
    ) -> Result<(), GlError> {
        self.check_window(mag_w, phase_w)?;
        if ind >= self.cfg.w_size {
            return Err(GlError::InvalidWindow(format!(
                "ind {} must be below w_size {}",
                ind, self.cfg.w_size
            )));
        }
        for _ in 0..n_iters {
            let span = self.local_istft(mag_w, phase_w);
            self.estimate_phases(&span, phase_w, ind);
        }
        Ok(())
    }
}

//! Cached forward/inverse real-FFT plans.

use std::sync::Arc;

use realfft::num_complex::Complex64;
use realfft::{ComplexToReal, RealFftPlanner, RealToComplex};

/// A matched pair of real-input forward and inverse FFT plans of one size.
///
/// The inverse path enforces the half-spectrum convention of a real signal
/// by zeroing the imaginary parts of the DC and Nyquist bins, and folds in
/// the 1/fft_size scaling so `inverse(forward(x)) == x` up to round-off.
pub struct RealFft {
    fft_size: usize,
    forward: Arc<dyn RealToComplex<f64>>,
    inverse: Arc<dyn ComplexToReal<f64>>,
}

impl RealFft {
    pub fn new(fft_size: usize) -> Self {
        let mut planner = RealFftPlanner::<f64>::new();
        Self {
            fft_size,
            forward: planner.plan_fft_forward(fft_size),
            inverse: planner.plan_fft_inverse(fft_size),
        }
    }

    pub fn fft_size(&self) -> usize {
        self.fft_size
    }

    /// Half-spectrum bins per transform: fft_size/2 + 1.
    pub fn num_bins(&self) -> usize {
        self.fft_size / 2 + 1
    }

    /// Forward transform of one fft_size-sample frame.
    pub fn forward(&self, frame: &[f64]) -> Vec<Complex64> {
        assert_eq!(frame.len(), self.fft_size, "frame length must equal fft_size");
        let mut scratch = frame.to_vec();
        let mut bins = vec![Complex64::default(); self.num_bins()];
        self.forward
            .process(&mut scratch, &mut bins)
            .expect("buffer lengths are fixed by construction");
        bins
    }

    /// Inverse transform producing fft_size time samples.
    pub fn inverse(&self, bins: &[Complex64]) -> Vec<f64> {
        assert_eq!(bins.len(), self.num_bins(), "bin count must equal fft_size/2 + 1");
        let mut scratch = bins.to_vec();
        scratch[0].im = 0.0;
        let last = scratch.len() - 1;
        scratch[last].im = 0.0;
        let mut time = vec![0.0; self.fft_size];
        self.inverse
            .process(&mut scratch, &mut time)
            .expect("buffer lengths are fixed by construction");
        let scale = 1.0 / self.fft_size as f64;
        for v in &mut time {
            *v *= scale;
        }
        time
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forward_then_inverse_is_identity() {
        let fft = RealFft::new(64);
        let x: Vec<f64> = (0..64).map(|i| (i as f64 * 0.37).sin()).collect();
        let y = fft.inverse(&fft.forward(&x));
        for (a, b) in x.iter().zip(&y) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn forward_matches_brute_force_dft() {
        let n = 32;
        let fft = RealFft::new(n);
        let x: Vec<f64> = (0..n).map(|i| ((i * i) as f64 * 0.11).cos()).collect();
        let bins = fft.forward(&x);
        for (k, bin) in bins.iter().enumerate() {
            let mut re = 0.0;
            let mut im = 0.0;
            for (i, &v) in x.iter().enumerate() {
                let phase = -std::f64::consts::TAU * (k * i) as f64 / n as f64;
                re += v * phase.cos();
                im += v * phase.sin();
            }
            assert!((bin.re - re).abs() < 1e-9, "bin {k} re");
            assert!((bin.im - im).abs() < 1e-9, "bin {k} im");
        }
    }

    #[test]
    fn inverse_tolerates_residual_imaginary_parts_at_edges() {
        let fft = RealFft::new(16);
        let mut bins = vec![Complex64::new(0.0, 0.0); 9];
        bins[0] = Complex64::new(1.0, 1e-16);
        bins[8] = Complex64::new(-1.0, -1e-16);
        let time = fft.inverse(&bins);
        assert_eq!(time.len(), 16);
        assert!(time.iter().all(|v| v.is_finite()));
    }
}

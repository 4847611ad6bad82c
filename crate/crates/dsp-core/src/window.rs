//! Periodic Hann window.

use std::f64::consts::TAU;

use crate::error::DspError;

/// Periodic Hann window: w[n] = 0.5 · (1 − cos(2πn/length)).
///
/// The periodic form (denominator `length`, not `length − 1`) is what makes
/// the squared-window overlap-add sum constant when frames advance by an
/// integer divisor of the window length.
pub fn hann_window(length: usize) -> Result<Vec<f64>, DspError> {
    if length < 2 {
        return Err(DspError::WindowTooShort(length));
    }
    Ok((0..length)
        .map(|n| 0.5 * (1.0 - (TAU * n as f64 / length as f64).cos()))
        .collect())
}

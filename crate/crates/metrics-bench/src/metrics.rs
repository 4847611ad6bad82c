//! Objective scores: spectral convergence and signal-to-noise ratio.

use dsp_core::{batch_stft, StreamConfig};

use crate::error::MetricsError;

/// Floor reported when the estimate matches the reference exactly.
pub const SC_FLOOR_DB: f64 = -300.0;
/// Ceiling reported when the error energy is exactly zero.
pub const SNR_CEILING_DB: f64 = 300.0;

/// Linear magnitude spectrogram of a signal, one row per frame. The raw
/// short-time transform is used, with no emphasis or compression, so the
/// score domain is independent of any pipeline preprocessing.
pub fn magnitude_frames(
    samples: &[f64],
    cfg: &StreamConfig,
) -> Result<Vec<Vec<f64>>, MetricsError> {
    let frames = batch_stft(samples, cfg)?;
    Ok(frames
        .iter()
        .map(|frame| frame.iter().map(|bin| bin.norm()).collect())
        .collect())
}

/// 20·log10 of the Frobenius distance between the magnitude spectrograms,
/// relative to the reference norm. Identical inputs report [`SC_FLOOR_DB`].
pub fn spectral_convergence(
    ref_mag: &[Vec<f64>],
    est_mag: &[Vec<f64>],
) -> Result<f64, MetricsError> {
    let ref_bins = ref_mag.first().map_or(0, Vec::len);
    let est_bins = est_mag.first().map_or(0, Vec::len);
    let same_shape = ref_mag.len() == est_mag.len()
        && ref_mag
            .iter()
            .zip(est_mag)
            .all(|(r, e)| r.len() == ref_bins && e.len() == r.len());
    if !same_shape {
        return Err(MetricsError::ShapeMismatch {
            ref_frames: ref_mag.len(),
            ref_bins,
            est_frames: est_mag.len(),
            est_bins,
        });
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for (r_row, e_row) in ref_mag.iter().zip(est_mag) {
        for (&r, &e) in r_row.iter().zip(e_row) {
            num += (r - e) * (r - e);
            den += r * r;
        }
    }
    if den == 0.0 {
        return Err(MetricsError::AllZeroReference);
    }
    if num == 0.0 {
        return Ok(SC_FLOOR_DB);
    }
    Ok((20.0 * (num.sqrt() / den.sqrt()).log10()).max(SC_FLOOR_DB))
}

/// 10·log10 of reference energy over error energy. An exact match reports
/// [`SNR_CEILING_DB`].
pub fn snr(reference: &[f64], estimate: &[f64]) -> Result<f64, MetricsError> {
    if reference.len() != estimate.len() {
        return Err(MetricsError::LengthMismatch {
            ref_len: reference.len(),
            est_len: estimate.len(),
        });
    }
    let signal: f64 = reference.iter().map(|&v| v * v).sum();
    if signal == 0.0 {
        return Err(MetricsError::AllZeroReference);
    }
    let noise: f64 = reference
        .iter()
        .zip(estimate)
        .map(|(&r, &e)| (r - e) * (r - e))
        .sum();
    if noise == 0.0 {
        return Ok(SNR_CEILING_DB);
    }
    Ok((10.0 * (signal / noise).log10()).min(SNR_CEILING_DB))
}

/// Drops `shift` leading samples from the estimate and truncates both
/// signals to their common length, pairing reference sample i with estimate
/// sample i + shift.
pub fn align_by_shift<'a>(
    reference: &'a [f64],
    estimate: &'a [f64],
    shift: usize,
) -> Result<(&'a [f64], &'a [f64]), MetricsError> {
    if shift > estimate.len() {
        return Err(MetricsError::ShiftTooLarge { shift, est_len: estimate.len() });
    }
    let est = &estimate[shift..];
    let len = reference.len().min(est.len());
    Ok((&reference[..len], &est[..len]))
}

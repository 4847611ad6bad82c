//! First-order emphasis filtering applied around the spectral pipeline.

use crate::error::DspError;

fn check_coef(coef: f64) -> Result<(), DspError> {
    if (0.0..1.0).contains(&coef) {
        Ok(())
    } else {
        Err(DspError::InvalidCoefficient(coef))
    }
}

fn check_finite(x: &[f64]) -> Result<(), DspError> {
    match x.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(DspError::NonFiniteInput(i)),
        None => Ok(()),
    }
}

/// High-boost filter applied before analysis: y[n] = x[n] − coef · x[n−1],
/// with y[0] = x[0].
pub fn preemphasis(x: &[f64], coef: f64) -> Result<Vec<f64>, DspError> {
    check_coef(coef)?;
    check_finite(x)?;
    let mut y = Vec::with_capacity(x.len());
    let mut prev = 0.0;
    for &v in x {
        y.push(v - coef * prev);
        prev = v;
    }
    Ok(y)
}

/// Streaming inverse of [`preemphasis`].
///
/// Runs the recursion y[n] = x[n] + coef · y[n−1] and divides every output
/// sample by (1 + coef). The recursion state is carried across `process`
/// calls pre-division, so chunked processing matches a single whole-signal
/// call exactly.
#[derive(Debug, Clone)]
pub struct Deemphasis {
    coef: f64,
    carry: f64,
}

impl Deemphasis {
    pub fn new(coef: f64) -> Result<Self, DspError> {
        check_coef(coef)?;
        Ok(Self { coef, carry: 0.0 })
    }

    pub fn process(&mut self, x: &[f64]) -> Vec<f64> {
        let scale = 1.0 / (1.0 + self.coef);
        let mut y = Vec::with_capacity(x.len());
        for &v in x {
            self.carry = v + self.coef * self.carry;
            y.push(self.carry * scale);
        }
        y
    }
}

/// One-shot de-emphasis of a whole signal.
pub fn deemphasis(x: &[f64], coef: f64) -> Result<Vec<f64>, DspError> {
    check_finite(x)?;
    let mut filter = Deemphasis::new(coef)?;
    Ok(filter.process(x))
}

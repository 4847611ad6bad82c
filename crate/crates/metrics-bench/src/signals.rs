//! Seeded synthesis of speech-shaped test signals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Length of the raised-cosine fades applied to both ends.
pub const EDGE_FADE_SAMPLES: usize = 320;

/// A deterministic voiced-speech stand-in: a drifting pitch with rolled-off
/// harmonics shaped by two resonances, syllabic amplitude modulation, and a
/// faint noise floor. Both ends fade in and out over
/// [`EDGE_FADE_SAMPLES`] samples and the peak is normalized to 0.5.
pub fn speech_like(seed: u64, seconds: f64, sample_rate: u32) -> Vec<f64> {
    let rate = sample_rate as f64;
    let len = (seconds * rate).round() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f0 = 90.0 + rng.gen::<f64>() * 90.0;
    let vibrato_hz = 3.0 + rng.gen::<f64>() * 3.0;
    let vibrato_phase = rng.gen::<f64>() * std::f64::consts::TAU;
    let syllable_hz = 2.0 + rng.gen::<f64>() * 3.0;
    let syllable_phase = rng.gen::<f64>() * std::f64::consts::TAU;
    let formant_a = 450.0 + rng.gen::<f64>() * 450.0;
    let formant_b = 1200.0 + rng.gen::<f64>() * 1000.0;
    let noise_amp = 0.01;

    let resonance = |freq: f64, center: f64, width: f64| {
        let d = (freq - center) / width;
        1.0 / (1.0 + d * d)
    };
    let n_harmonics = 12usize;
    let harmonic_amps: Vec<f64> = (1..=n_harmonics)
        .map(|h| {
            let freq = f0 * h as f64;
            let shape = resonance(freq, formant_a, 250.0) + 0.6 * resonance(freq, formant_b, 400.0);
            (0.3 + shape) / h as f64
        })
        .collect();

    let mut phase = 0.0f64;
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let t = i as f64 / rate;
        let inst_f0 =
            f0 * (1.0 + 0.04 * (std::f64::consts::TAU * vibrato_hz * t + vibrato_phase).sin());
        phase += std::f64::consts::TAU * inst_f0 / rate;
        let syllable =
            0.5 + 0.5 * (std::f64::consts::TAU * syllable_hz * t + syllable_phase).sin();
        let envelope = 0.3 + 0.7 * syllable * syllable;
        let mut v = 0.0;
        for (h, &amp) in harmonic_amps.iter().enumerate() {
            v += amp * ((h + 1) as f64 * phase).sin();
        }
        v = envelope * v + noise_amp * (rng.gen::<f64>() * 2.0 - 1.0);
        let edge = i.min(len.saturating_sub(1 + i));
        if edge < EDGE_FADE_SAMPLES {
            let ramp = 0.5
                * (1.0
                    - (std::f64::consts::PI * edge as f64 / EDGE_FADE_SAMPLES as f64).cos());
            v *= ramp;
        }
        out.push(v);
    }
    let peak = out.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    if peak > 0.0 {
        let gain = 0.5 / peak;
        for v in &mut out {
            *v *= gain;
        }
    }
    out
}

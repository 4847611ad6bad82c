//! End-to-end tests spawning the compiled binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dsp_core::StreamConfig;
use metrics_bench::signals::speech_like;
use specinvert::{wav_read_expecting, wav_write, WavClip};
use specpipe::{analyze, save_spectrogram};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_specinvert"));
    cmd.env_remove("SPECINVERT_SEED");
    cmd
}

fn run_ok(cmd: &mut Command) -> String {
    let out = cmd.output().expect("binary runs");
    assert!(
        out.status.success(),
        "command failed\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn run_err(cmd: &mut Command) -> Output {
    let out = cmd.output().expect("binary runs");
    assert!(!out.status.success(), "command unexpectedly succeeded");
    out
}

fn stdout_field(stdout: &str, key: &str) -> f64 {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("missing {key} in output:\n{stdout}"))
        .parse()
        .unwrap()
}

fn speech_wav(dir: &Path, name: &str, seed: u64, seconds: f64) -> PathBuf {
    let path = dir.join(name);
    let clip = WavClip { sample_rate: 16_000, samples: speech_like(seed, seconds, 16_000) };
    wav_write(&path, &clip).unwrap();
    path
}

fn analyzed_lms(dir: &Path, name: &str, seed: u64, seconds: f64) -> PathBuf {
    let cfg = StreamConfig::default();
    let quantized: Vec<f64> = speech_like(seed, seconds, 16_000)
        .iter()
        .map(|&v| specinvert::quantize(v) as f64 / 32768.0)
        .collect();
    let spec = analyze(&quantized, &cfg).unwrap();
    let path = dir.join(name);
    save_spectrogram(&spec, &path).unwrap();
    path
}

#[test]
fn more_iterations_give_strictly_better_spectral_convergence() {
    let dir = tempfile::tempdir().unwrap();
    let wav = speech_wav(dir.path(), "in.wav", 11, 1.0);
    let lms = dir.path().join("in.lms");
    run_ok(bin().args(["analyze"]).arg(&wav).arg(&lms));

    let mut scores = Vec::new();
    for (iters, name) in [("70", "gl70.wav"), ("3", "gl3.wav")] {
        let out = dir.path().join(name);
        run_ok(
            bin()
                .args(["invert"])
                .arg(&lms)
                .arg(&out)
                .args(["--vocoder", "ngl", "--iters", iters]),
        );
        let stdout = run_ok(bin().args(["compare"]).arg(&wav).arg(&out));
        scores.push(stdout_field(&stdout, "sc_db"));
    }
    assert!(
        scores[0] < scores[1],
        "70 iterations ({}) should beat 3 ({})",
        scores[0],
        scores[1]
    );
}

#[test]
fn sgl_output_length_is_hops_plus_the_delay_tail() {
    let dir = tempfile::tempdir().unwrap();
    let lms = analyzed_lms(dir.path(), "in.lms", 3, 0.1625);
    let out = dir.path().join("sgl.wav");
    let stdout = run_ok(bin().args(["invert"]).arg(&lms).arg(&out).args(["--vocoder", "sgl"]));
    assert!(stdout.contains("2800 samples"), "stdout: {stdout}");
    let clip = wav_read_expecting(&out, 16_000).unwrap();
    assert_eq!(clip.samples.len(), 10 * 200 + 800);
}

#[test]
fn melgan_seeds_weights_from_the_environment_and_reuses_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let lms = analyzed_lms(dir.path(), "in.lms", 4, 0.1625);
    let weights = dir.path().join("seeded.gwt");
    let out1 = dir.path().join("a.wav");
    let out2 = dir.path().join("b.wav");

    let stdout = run_ok(
        bin()
            .args(["invert"])
            .arg(&lms)
            .arg(&out1)
            .args(["--vocoder", "melgan", "--weights"])
            .arg(&weights)
            .env("SPECINVERT_SEED", "7"),
    );
    assert!(stdout.contains("2000 samples"), "stdout: {stdout}");
    assert!(weights.exists());

    run_ok(
        bin()
            .args(["invert"])
            .arg(&lms)
            .arg(&out2)
            .args(["--vocoder", "melgan", "--weights"])
            .arg(&weights),
    );
    assert_eq!(std::fs::read(&out1).unwrap(), std::fs::read(&out2).unwrap());
}

#[test]
fn melgan_without_weights_is_a_one_line_error() {
    let dir = tempfile::tempdir().unwrap();
    let lms = analyzed_lms(dir.path(), "in.lms", 5, 0.1625);
    let out = dir.path().join("x.wav");
    let result = run_err(bin().args(["invert"]).arg(&lms).arg(&out).args(["--vocoder", "melgan"]));
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("--weights"), "stderr: {stderr}");
    assert_eq!(stderr.lines().count(), 1, "stderr: {stderr}");
}

#[test]
fn unknown_vocoder_names_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let lms = analyzed_lms(dir.path(), "in.lms", 6, 0.1625);
    let out = dir.path().join("x.wav");
    let result =
        run_err(bin().args(["invert"]).arg(&lms).arg(&out).args(["--vocoder", "wavenet"]));
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("vocoder"), "stderr: {stderr}");
}

#[test]
fn commit_index_outside_the_window_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let lms = analyzed_lms(dir.path(), "in.lms", 7, 0.1625);
    let out = dir.path().join("x.wav");
    let result = run_err(
        bin()
            .args(["invert"])
            .arg(&lms)
            .arg(&out)
            .args(["--vocoder", "sgl", "--ind", "4"]),
    );
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.starts_with("error: "), "stderr: {stderr}");
}

#[test]
fn bench_prints_the_report_and_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let lms = analyzed_lms(dir.path(), "in.lms", 8, 0.5);
    let json_path = dir.path().join("report.json");
    let stdout = run_ok(
        bin()
            .args(["bench"])
            .arg(&lms)
            .args(["--vocoder", "sgl", "--warmup", "4", "--json"])
            .arg(&json_path),
    );
    assert_eq!(stdout_field(&stdout, "lookahead_delay_ms"), 12.5);
    assert_eq!(stdout_field(&stdout, "total_delay_ms"), 50.0);
    assert!(stdout_field(&stdout, "rtf") > 0.0);
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(parsed["vocoder"], "sgl1");
    assert_eq!(
        parsed["state_bytes"].as_u64().unwrap() as f64,
        stdout_field(&stdout, "state_bytes")
    );
}

#[test]
fn comparing_a_file_with_itself_hits_both_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let wav = speech_wav(dir.path(), "in.wav", 9, 1.0);
    let stdout = run_ok(bin().args(["compare"]).arg(&wav).arg(&wav));
    assert_eq!(stdout_field(&stdout, "sc_db"), -300.0);
    assert_eq!(stdout_field(&stdout, "snr_db"), 300.0);
}

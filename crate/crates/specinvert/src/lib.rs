//! Library surface of the specinvert command-line tool: WAV I/O and the
//! functions behind the analyze, invert, bench, and compare subcommands.

pub mod commands;
pub mod wav;

pub use commands::{
    cmd_analyze, cmd_bench, cmd_compare, cmd_invert, AnalysisOpts, BenchOpts, BenchVocoder,
    CliError, CompareScores, InvertOpts, InvertVocoder, SEED_ENV,
};
pub use wav::{quantize, wav_read, wav_read_expecting, wav_write, WavClip, WavError};

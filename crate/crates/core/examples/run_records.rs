//! Writes curve, summary, config and manifest for one experiment, then
//! replays the manifest into a second directory and compares the curves.
//!
//! ```bash
//! cargo run --example run_records -- /tmp/chirplab-demo
//! ```

use std::path::PathBuf;

use chirplab::cli::{cmd_replay, cmd_verify};
use chirplab::experiments::{ExperimentConfig, ExperimentKind};

fn main() -> chirplab::Result<()> {
    let root = std::env::args().nth(1).map_or_else(|| std::env::temp_dir().join("chirplab-demo"), PathBuf::from);
    let (first, second) = (root.join("first"), root.join("second"));
    let config = ExperimentConfig { k: 2, seed: Some(1), ..Default::default() };
    let code = cmd_verify(ExperimentKind::UpperBound, &config, &first, Some(1))?;
    println!("exit code {code}");
    cmd_replay(&first.join("upper-bound_k2_seed1.manifest.json"), Some(&second), Some(1))?;
    let a = std::fs::read(first.join("upper-bound_k2_seed1.csv")).expect("first curve");
    let b = std::fs::read(second.join("upper-bound_k2_seed1.csv")).expect("replayed curve");
    println!("replayed curve identical: {}", a == b);
    print!("{}", String::from_utf8_lossy(&a));
    Ok(())
}

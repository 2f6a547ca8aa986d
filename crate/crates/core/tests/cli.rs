use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn chirplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chirplab")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn monomial_counts() {
    for (k, count) in [(1, 2), (2, 6), (4, 70)] {
        let o = chirplab(&["monomials", "--k", &k.to_string()]);
        assert_eq!(code(&o), 0);
        assert!(stdout(&o).contains(&format!("count {count}\n")), "{}", stdout(&o));
    }
    assert_eq!(code(&chirplab(&["monomials", "--k", "0"])), 2);
    assert_eq!(code(&chirplab(&["monomials"])), 2);
}

#[test]
fn phase_exit_codes() {
    assert_eq!(code(&chirplab(&["phase", "--k", "2", "--n", "5", "--seed", "1"])), 0);
    let o = chirplab(&["phase", "--k", "2", "--n", "4", "--seed", "1"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("rank deficient"));
    assert_eq!(code(&chirplab(&["phase", "--n4k2", "--seed", "1"])), 0);
    assert_eq!(code(&chirplab(&["phase", "--k", "2", "--n", "5"])), 2, "seed is mandatory");
}

#[test]
fn bad_configs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "k = [[\n").unwrap();
    assert_eq!(code(&chirplab(&["phase", "--config", path(&bad)])), 2);
    fs::write(&bad, "k = 2\nseed = 1\nunknown_key = 3\n").unwrap();
    assert_eq!(code(&chirplab(&["verify", "identity", "--config", path(&bad)])), 2);
    let missing = dir.path().join("missing.toml");
    assert_eq!(code(&chirplab(&["verify", "identity", "--config", path(&missing)])), 2);
    assert_eq!(code(&chirplab(&["verify", "lower-bound", "--N-list", "100,50"])), 2);
    assert_eq!(code(&chirplab(&["verify", "upper-bound", "--k", "2"])), 2, "no seed");
}

#[test]
fn fault_injection() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    // Coarse principal-value grid.
    let cfg = dir.path().join("coarse.toml");
    fs::write(&cfg, "k = 2\nseed = 1\noracle_resolution = 20\n").unwrap();
    assert_eq!(code(&chirplab(&["verify", "oracle", "--config", path(&cfg), "--out", path(&out)])), 3);
    // Density grid below the minimum.
    fs::write(&cfg, "k = 3\nseed = 1\n[quad]\ndensity_points_per_decade = 8\n").unwrap();
    assert_eq!(code(&chirplab(&["verify", "upper-bound", "--config", path(&cfg), "--out", path(&out)])), 3);
    // Degenerate alphas: repeated columns make the constraint rows dependent.
    fs::write(&cfg, "k = 2\nalphas = [[2.0, 2.0, 3.0, 4.0], [5.0, 5.0, 6.0, 7.0]]\n").unwrap();
    assert_eq!(code(&chirplab(&["verify", "counterexample", "--config", path(&cfg), "--out", path(&out)])), 1);
    assert_eq!(code(&chirplab(&["phase", "--config", path(&cfg)])), 1);
}

#[test]
fn verify_writes_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path();
    let o = chirplab(&["verify", "identity", "--k", "2", "--out", path(out)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let csv = fs::read_to_string(out.join("identity_k2.csv")).unwrap();
    assert!(csv.starts_with("N,value,log_N,ratio\n"));
    assert_eq!(csv.lines().count(), 4);
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("identity_k2.summary.json")).unwrap()).unwrap();
    assert_eq!(summary["schema_version"], 1);
    assert_eq!(summary["verdict"], "PASS");
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("identity_k2.manifest.json")).unwrap()).unwrap();
    let files: Vec<&str> = manifest["files"].as_array().unwrap().iter().map(|f| f.as_str().unwrap()).collect();
    assert_eq!(files, ["identity_k2.csv", "identity_k2.summary.json", "identity_k2.config.toml"]);
    for f in files {
        assert!(out.join(f).exists());
    }

    let o = chirplab(&["verify", "lower-bound", "--k", "1", "--out", path(out)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("gap_to_pi"));
}

#[test]
fn exit_code_follows_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let o = chirplab(&["verify", "counterexample", "--k", "2", "--n", "5", "--seed", "1", "--out", path(dir.path())]);
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("counterexample_k2_seed1.summary.json")).unwrap())
            .unwrap();
    let passed = summary["verdict"] == "PASS";
    assert_eq!(code(&o), if passed { 0 } else { 1 });
}

#[test]
fn replay_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first");
    let second = dir.path().join("second");
    let o = chirplab(&[
        "verify", "upper-bound", "--k", "2", "--seed", "3", "--N-list", "100,200,300,500", "--threads", "1", "--out",
        path(&first),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let manifest = first.join("upper-bound_k2_seed3.manifest.json");
    assert_eq!(code(&chirplab(&["replay", path(&manifest), "--out", path(&second), "--threads", "1"])), 0);
    for f in ["upper-bound_k2_seed3.csv", "upper-bound_k2_seed3.summary.json", "upper-bound_k2_seed3.config.toml"] {
        assert_eq!(fs::read(first.join(f)).unwrap(), fs::read(second.join(f)).unwrap(), "{f}");
    }
    // The resolved config file reproduces the run as well.
    let third = dir.path().join("third");
    let cfg = first.join("upper-bound_k2_seed3.config.toml");
    assert_eq!(code(&chirplab(&["verify", "upper-bound", "--config", path(&cfg), "--threads", "2", "--out", path(&third)])), 0);
    assert_eq!(
        fs::read(first.join("upper-bound_k2_seed3.csv")).unwrap(),
        fs::read(third.join("upper-bound_k2_seed3.csv")).unwrap()
    );
}

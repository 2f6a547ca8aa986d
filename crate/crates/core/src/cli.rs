//! Command-line front end: config resolution, result files and exit codes.
//!
//! Exit codes: `0` pass, `1` a verified check failed, `2` configuration or
//! usage error, `3` numeric infeasibility.
//!
//! `verify` writes four files per run into `--out`, all sharing the stem
//! `<experiment>_k<k>[_seed<seed>]`:
//!
//! - `.csv`: the curve, header `N,value,log_N,ratio`
//! - `.summary.json`: config echo, fit, checks, verdict
//! - `.config.toml`: the resolved config
//! - `.manifest.json`: the [`RunManifest`] listing the other three
//!
//! `replay <manifest>` re-runs a manifest's command from its embedded config.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::experiments::{run_experiment, Check, CurvePoint, ExperimentConfig, ExperimentKind, ExperimentReport, FitResult, Verdict};
use crate::phase::{
    binomial, enumerate_multi_indices, multinomial, solve_phase, solve_phase_n4k2, AlphaMatrix, MultiIndex, PhaseVector,
};
use crate::phase::oracle::expand_polynomial_oracle;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_numeric_infeasibility() {
        return EXIT_INFEASIBLE;
    }
    match e {
        Error::RankDeficient { .. }
        | Error::DegenerateMixed { .. }
        | Error::DegenerateQuadratic { .. }
        | Error::InsufficientPoints { .. }
        | Error::NonPositiveValues { .. } => EXIT_CHECK_FAILED,
        _ => EXIT_USAGE,
    }
}

#[derive(Debug, Parser)]
#[command(name = "chirplab", version, about = "Chirp counterexamples for products of multilinear Hilbert transform symbols")]
pub struct Cli {
    /// Worker threads for sweeps; output does not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree-k monomials in x, t1..tk with their multinomial coefficients.
    Monomials {
        #[arg(long)]
        k: usize,
    },
    /// Solve for the chirp phase vector and report residuals.
    Phase {
        #[command(flatten)]
        common: CommonArgs,
        /// Use the dedicated k = 2, n = 4 solver.
        #[arg(long)]
        n4k2: bool,
    },
    /// Run one experiment and write its result files.
    Verify {
        experiment: Experiment,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Re-run the command recorded in a manifest.
    Replay {
        manifest: PathBuf,
        /// Output directory (defaults to the manifest's directory).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// TOML config; flags below take precedence over it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory. `verify` defaults to the current one; `phase` prints JSON without it.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for the alpha matrix.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of Hilbert-transform factors.
    #[arg(long)]
    pub k: Option<usize>,
    /// Number of chirps per factor.
    #[arg(long)]
    pub n: Option<usize>,
    /// Cutoffs to sweep, comma separated.
    #[arg(long = "N-list", value_delimiter = ',')]
    pub n_list: Option<Vec<f64>>,
    /// Relative residual allowed for the phase vector.
    #[arg(long = "tol-phase")]
    pub tol_phase: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    Identity,
    LowerBound,
    UpperBound,
    Counterexample,
    Fresnel,
    Oracle,
}

impl From<Experiment> for ExperimentKind {
    fn from(e: Experiment) -> Self {
        match e {
            Experiment::Identity => ExperimentKind::Identity,
            Experiment::LowerBound => ExperimentKind::LowerBound,
            Experiment::UpperBound => ExperimentKind::UpperBound,
            Experiment::Counterexample => ExperimentKind::Counterexample,
            Experiment::Fresnel => ExperimentKind::Fresnel,
            Experiment::Oracle => ExperimentKind::Oracle,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedVerdict {
    pub name: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: u32,
    /// `verify` or `phase`.
    pub command: String,
    pub experiment: Option<ExperimentKind>,
    pub tool_version: String,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub config: ExperimentConfig,
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
    pub verdicts: Vec<NamedVerdict>,
    /// File names relative to the manifest's directory.
    pub files: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub schema_version: u32,
    pub experiment: String,
    pub k: usize,
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub config: ExperimentConfig,
    pub fit: Option<FitResult>,
    pub checks: Vec<Check>,
    pub details: std::collections::BTreeMap<String, f64>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseReport {
    pub schema_version: u32,
    pub k: usize,
    pub n: usize,
    pub seed: Option<u64>,
    pub solver: String,
    pub alphas: AlphaMatrix,
    pub theta: Vec<f64>,
    pub mixed_coefficient: f64,
    pub xk_coefficient: f64,
    pub residual: f64,
    /// Largest constrained coefficient from the direct expansion.
    pub expansion_residual: f64,
    /// `tol_phase · ‖θ‖`.
    pub residual_bound: f64,
    pub rank: usize,
    pub constraints: usize,
    pub alpha_coef: Option<f64>,
    pub beta_coef: Option<f64>,
    pub reflected: Option<bool>,
    pub verdict: Verdict,
}

/// Curve rows in CSV with header `N,value,log_N,ratio`.
pub fn curve_csv(curve: &[CurvePoint]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if curve.is_empty() {
        w.write_record(["N", "value", "log_N", "ratio"]).expect("in-memory write");
    }
    for p in curve {
        w.serialize(p).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("ascii")
}

pub fn parse_curve_csv(text: &str) -> Result<Vec<CurvePoint>, String> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())
}

/// Reads the config file (if any) and applies flag overrides.
pub fn resolve_config(common: &CommonArgs) -> Result<ExperimentConfig, Error> {
    let mut config = match &common.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read config {}: {e}", path.display())))?;
            ExperimentConfig::from_toml(&text)?
        }
        None => ExperimentConfig::default(),
    };
    if let Some(k) = common.k {
        config.k = k;
    }
    if common.n.is_some() {
        config.n = common.n;
    }
    if common.seed.is_some() {
        config.seed = common.seed;
    }
    if common.n_list.is_some() {
        config.n_list = common.n_list.clone();
    }
    if let Some(t) = common.tol_phase {
        config.tol_phase = t;
    }
    Ok(config)
}

fn now_ms() -> u128 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_millis())
}

fn write(path: &Path, contents: &str) -> Result<(), Error> {
    fs::write(path, contents).map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))
}

fn prepare_dir(dir: &Path) -> Result<(), Error> {
    fs::create_dir_all(dir).map_err(|e| Error::InvalidInput(format!("cannot create {}: {e}", dir.display())))
}

fn stem(name: &str, config: &ExperimentConfig) -> String {
    match config.seed {
        Some(s) => format!("{name}_k{}_seed{s}", config.k),
        None => format!("{name}_k{}", config.k),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match cli.threads {
        Some(0) => {
            eprintln!("error: --threads must be positive");
            EXIT_USAGE
        }
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => {
                eprintln!("error: cannot build thread pool: {e}");
                EXIT_USAGE
            }
        },
        None => dispatch(&cli),
    }
}

fn dispatch(cli: &Cli) -> i32 {
    let outcome = match &cli.command {
        Command::Monomials { k } => cmd_monomials(*k),
        Command::Phase { common, n4k2 } => resolve_config(common).and_then(|mut c| {
            c.n4k2 |= *n4k2;
            cmd_phase(&c, common.out.as_deref(), cli.threads)
        }),
        Command::Verify { experiment, common } => resolve_config(common).and_then(|c| {
            cmd_verify((*experiment).into(), &c, common.out.as_deref().unwrap_or(Path::new(".")), cli.threads)
        }),
        Command::Replay { manifest, out } => cmd_replay(manifest, out.as_deref(), cli.threads),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::RankDeficient { rows: 4, cols: 4, .. }) {
                eprintln!("hint: for k = 2, n = 4 the general system has only the zero solution; pass --n4k2");
            }
            exit_code(&e)
        }
    }
}

pub fn cmd_monomials(k: usize) -> Result<i32, Error> {
    if !(1..=6).contains(&k) {
        return Err(Error::InvalidInput(format!("k must be in 1..=6, got {k}")));
    }
    let indices = enumerate_multi_indices(k + 1, k as u32);
    println!("{:<16} {:<24} multinomial", "index", "monomial");
    for idx in &indices {
        println!("{:<16} {:<24} {}", idx.to_string(), idx.monomial_name(), multinomial(idx)?);
    }
    let expected = binomial(2 * k as u64, k as u64).ok_or(Error::Overflow { degree: k as u32 })?;
    println!("count {}", indices.len());
    Ok(if indices.len() as u64 == expected { EXIT_PASS } else { EXIT_CHECK_FAILED })
}

fn expansion_residual(theta: &[f64], alphas: &AlphaMatrix, kept: &[MultiIndex]) -> f64 {
    expand_polynomial_oracle(theta, alphas)
        .into_iter()
        .filter(|(idx, _)| !kept.contains(idx))
        .map(|(_, c)| c.abs())
        .fold(0.0, f64::max)
}

/// Solves the phase for the configured alphas; writes `phase` files when
/// `out` is given, otherwise prints the record.
pub fn cmd_phase(config: &ExperimentConfig, out: Option<&Path>, threads: Option<usize>) -> Result<i32, Error> {
    let started = now_ms();
    if config.k == 0 || config.k > 6 {
        return Err(Error::InvalidInput(format!("k must be in 1..=6, got {}", config.k)));
    }
    let default_n = if config.n4k2 { 4 } else { config.n_or_default() };
    let alphas = config.alpha_matrix(default_n)?;
    let k = alphas.k();
    let (phase, kept, fresnel): (PhaseVector, Vec<MultiIndex>, _) = if config.n4k2 {
        let f = solve_phase_n4k2(&alphas, config.tol_phase)?;
        let kept = vec![
            MultiIndex::new(vec![2, 0, 0]),
            MultiIndex::new(vec![0, 2, 0]),
            MultiIndex::new(vec![0, 1, 1]),
        ];
        (f.phase.clone(), kept, Some(f))
    } else {
        (solve_phase(&alphas, config.tol_phase)?, vec![MultiIndex::pure_first(k + 1, k as u32), MultiIndex::mixed(k)], None)
    };
    let expansion = expansion_residual(&phase.theta, &alphas, &kept);
    let bound = config.tol_phase * phase.theta_norm();
    let ok = phase.residual <= bound && expansion <= bound;
    let report = PhaseReport {
        schema_version: SCHEMA_VERSION,
        k,
        n: alphas.n(),
        seed: config.seed,
        solver: if fresnel.is_some() { "n4k2" } else { "general" }.into(),
        alphas: alphas.clone(),
        mixed_coefficient: phase.mixed_coefficient,
        xk_coefficient: phase.xk_coefficient,
        residual: phase.residual,
        expansion_residual: expansion,
        residual_bound: bound,
        rank: phase.rank,
        constraints: phase.constraints,
        alpha_coef: fresnel.as_ref().map(|f| f.alpha_coef),
        beta_coef: fresnel.as_ref().map(|f| f.beta_coef),
        reflected: fresnel.as_ref().map(|f| f.reflected),
        theta: phase.theta,
        verdict: Verdict::from_bool(ok),
    };
    match out {
        None => print!("{}", json(&report)),
        Some(dir) => {
            prepare_dir(dir)?;
            let name = format!("{}.phase.json", stem("phase", config));
            write(&dir.join(&name), &json(&report))?;
            let manifest = RunManifest {
                schema_version: SCHEMA_VERSION,
                command: "phase".into(),
                experiment: None,
                tool_version: TOOL_VERSION.into(),
                seed: config.seed,
                threads,
                config: config.clone(),
                started_unix_ms: started,
                finished_unix_ms: now_ms(),
                verdicts: vec![NamedVerdict { name: "residual".into(), verdict: report.verdict }],
                files: vec![name],
            };
            write(&dir.join(format!("{}.manifest.json", stem("phase", config))), &json(&manifest))?;
        }
    }
    println!("residual {:.3e} (bound {bound:.3e}), rank {} of {} constraints: {}", report.residual, report.rank, report.constraints, report.verdict);
    Ok(if ok { EXIT_PASS } else { EXIT_CHECK_FAILED })
}

fn print_report(report: &ExperimentReport) {
    for c in &report.checks {
        println!("{} {}: {}", Verdict::from_bool(c.passed), c.name, c.detail);
    }
    for (name, value) in &report.details {
        println!("  {name} = {value}");
    }
    if let Some(f) = &report.fit {
        println!("fit exponent {:.4}, constant {:.4}, r² {:.4} ({} points)", f.exponent, f.constant, f.r_squared, f.points_used);
    }
    println!("{} {}", report.experiment, report.verdict);
}

/// Runs one experiment and writes curve, summary, resolved config and manifest.
pub fn cmd_verify(kind: ExperimentKind, config: &ExperimentConfig, out: &Path, threads: Option<usize>) -> Result<i32, Error> {
    let started = now_ms();
    let report = run_experiment(kind, config)?;
    prepare_dir(out)?;
    let base = stem(kind.name(), config);
    let files = [format!("{base}.csv"), format!("{base}.summary.json"), format!("{base}.config.toml")];
    let summary = Summary {
        schema_version: SCHEMA_VERSION,
        experiment: report.experiment.clone(),
        k: report.k,
        n: report.n,
        seed: report.seed,
        config: config.clone(),
        fit: report.fit,
        checks: report.checks.clone(),
        details: report.details.clone(),
        verdict: report.verdict,
    };
    write(&out.join(&files[0]), &curve_csv(&report.curve))?;
    write(&out.join(&files[1]), &json(&summary))?;
    write(&out.join(&files[2]), &config.to_toml())?;
    let mut verdicts: Vec<NamedVerdict> = report
        .checks
        .iter()
        .map(|c| NamedVerdict { name: c.name.clone(), verdict: Verdict::from_bool(c.passed) })
        .collect();
    verdicts.push(NamedVerdict { name: "overall".into(), verdict: report.verdict });
    let manifest = RunManifest {
        schema_version: SCHEMA_VERSION,
        command: "verify".into(),
        experiment: Some(kind),
        tool_version: TOOL_VERSION.into(),
        seed: config.seed,
        threads,
        config: config.clone(),
        started_unix_ms: started,
        finished_unix_ms: now_ms(),
        verdicts,
        files: files.to_vec(),
    };
    write(&out.join(format!("{base}.manifest.json")), &json(&manifest))?;
    print_report(&report);
    Ok(if report.verdict.passed() { EXIT_PASS } else { EXIT_CHECK_FAILED })
}

pub fn read_manifest(path: &Path) -> Result<RunManifest, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read manifest {}: {e}", path.display())))?;
    let m: RunManifest =
        serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("manifest {}: {e}", path.display())))?;
    if m.schema_version != SCHEMA_VERSION {
        return Err(Error::InvalidInput(format!("unsupported manifest schema {}", m.schema_version)));
    }
    Ok(m)
}

pub fn cmd_replay(manifest: &Path, out: Option<&Path>, threads: Option<usize>) -> Result<i32, Error> {
    let m = read_manifest(manifest)?;
    let dir = match out {
        Some(d) => d.to_path_buf(),
        None => manifest.parent().map_or_else(|| PathBuf::from("."), Path::to_path_buf),
    };
    match (m.command.as_str(), m.experiment) {
        ("verify", Some(kind)) => cmd_verify(kind, &m.config, &dir, threads),
        ("phase", None) => cmd_phase(&m.config, Some(&dir), threads),
        (cmd, _) => Err(Error::InvalidInput(format!("manifest has unknown command {cmd}"))),
    }
}

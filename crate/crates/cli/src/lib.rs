//! Library half of the `bilms` command-line tool: config parsing, atomic
//! file output and the subcommand implementations.

use std::fs;
use std::io::Write;
use std::path::Path;

use bilms_core::harness::{self, ExperimentConfig, InputDistribution, Target};
use bilms_core::verify::{self, VerifyOptions};
use bilms_core::{Algorithm, BicomplexVector, FdConfig};
use serde::Deserialize;
use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const BAD_FLAGS: i32 = 2;
    pub const INVALID_CONFIG: i32 = 3;
}

/// Environment variable overriding the finite-difference step of `verify`.
pub const FD_STEP_ENV: &str = "BILMS_FD_H";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0} check(s) did not pass")]
    Verification(usize),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] bilms_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Core(bilms_core::Error::Config(_)) => exit::INVALID_CONFIG,
            CliError::Usage(_) => exit::BAD_FLAGS,
            CliError::Verification(_) | CliError::Io { .. } | CliError::Core(_) => exit::VERIFY_FAILED,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// On-disk experiment description.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    algorithm: String,
    taps: i64,
    mu: f64,
    steps: i64,
    seed: u64,
    #[serde(default)]
    noise_std: f64,
    #[serde(default = "default_target")]
    target: TargetSpec,
    #[serde(default = "default_input")]
    input: String,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum TargetSpec {
    Named(String),
    Explicit(Vec<[f64; 4]>),
}

fn default_target() -> TargetSpec {
    TargetSpec::Named("random".into())
}

fn default_input() -> String {
    "gaussian".into()
}

/// Parses and validates an experiment config from JSON text.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let raw: ConfigFile = serde_json::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))?;
    let algorithm: Algorithm = raw.algorithm.parse().map_err(|e: bilms_core::Error| match e {
        bilms_core::Error::Config(m) => CliError::Config(m),
        other => CliError::Core(other),
    })?;
    if raw.taps < 1 {
        return Err(CliError::Config("taps must be ≥ 1".into()));
    }
    if raw.steps < 1 {
        return Err(CliError::Config("steps must be ≥ 1".into()));
    }
    let input = match raw.input.as_str() {
        "gaussian" => InputDistribution::Gaussian,
        other => return Err(CliError::Config(format!("input: unknown value {other:?} (expected \"gaussian\")"))),
    };
    let target = match raw.target {
        TargetSpec::Named(s) if s == "random" => Target::Random,
        TargetSpec::Named(s) => {
            return Err(CliError::Config(format!("target: expected \"random\" or a list of [x1,x2,x3,x4], got {s:?}")))
        }
        TargetSpec::Explicit(taps) => {
            let elems = taps
                .into_iter()
                .map(bilms_core::Bicomplex::from_coords)
                .collect::<bilms_core::Result<Vec<_>>>()
                .and_then(BicomplexVector::new)
                .map_err(|e| CliError::Config(format!("target: {e}")))?;
            Target::Explicit(elems)
        }
    };
    let cfg = ExperimentConfig {
        algorithm,
        taps: raw.taps as usize,
        mu: raw.mu,
        steps: raw.steps as usize,
        seed: raw.seed,
        noise_std: raw.noise_std,
        target,
        input,
        initial: Default::default(),
    };
    cfg.validate().map_err(|e| match e {
        bilms_core::Error::Config(m) => CliError::Config(m),
        other => CliError::Core(other),
    })?;
    Ok(cfg)
}

/// Reads a JSON config file.
pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("config {}: {e}", path.display())))?;
    parse_config(&text)
}

/// Writes through a temporary file in the destination directory, then
/// renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let io_err = |source| CliError::Io {
        context: format!("writing {}", path.display()),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(contents).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

/// Finite-difference settings for `verify`, honouring `BILMS_FD_H`.
pub fn fd_config_from_env() -> Result<FdConfig> {
    match std::env::var(FD_STEP_ENV) {
        Ok(v) => {
            let h: f64 = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{FD_STEP_ENV}: not a number: {v:?}")))?;
            FdConfig::with_h(h).map_err(|e| CliError::Usage(format!("{FD_STEP_ENV}: {e}")))
        }
        Err(_) => Ok(FdConfig::default()),
    }
}

/// Runs every verification suite, printing the table to `out`.
pub fn cmd_verify<W: Write>(out: &mut W) -> Result<()> {
    let opts = VerifyOptions {
        fd: fd_config_from_env()?,
        ..VerifyOptions::default()
    };
    let report = verify::run_all(&opts)?;
    writeln!(out, "{report}").map_err(|source| CliError::Io {
        context: "writing report".into(),
        source,
    })?;
    match report.failures().count() {
        0 => Ok(()),
        n => Err(CliError::Verification(n)),
    }
}

/// Runs one experiment and writes its learning curve.
pub fn cmd_run(cfg: &ExperimentConfig, out: &Path) -> Result<harness::LearningCurve> {
    let curve = harness::run_experiment(cfg)?;
    write_atomic(out, curve.to_csv().as_bytes())?;
    Ok(curve)
}

/// Parses `--mu-grid` (comma-separated positive reals).
pub fn parse_mu_grid(s: &str) -> Result<Vec<f64>> {
    let mus = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .ok()
                .filter(|m| m.is_finite() && *m > 0.0)
                .ok_or_else(|| CliError::Usage(format!("--mu-grid: invalid step size {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if mus.is_empty() {
        return Err(CliError::Usage("--mu-grid: no values given".into()));
    }
    Ok(mus)
}

/// File name used for one μ of a sweep.
pub fn sweep_file_name(index: usize, mu: f64) -> String {
    format!("curve_{index:02}_mu_{mu}.csv")
}

/// Runs a μ sweep: one CSV per μ in `out_dir` plus `summary.csv`.
pub fn cmd_sweep(cfg: &ExperimentConfig, mus: &[f64], out_dir: &Path) -> Result<Vec<harness::SweepPoint>> {
    fs::create_dir_all(out_dir).map_err(|source| CliError::Io {
        context: format!("creating {}", out_dir.display()),
        source,
    })?;
    let points = harness::mu_sweep(cfg, mus)?;
    let mut summary = String::from("mu,final_sq_error,final_weight_err_sq,diverged\n");
    for (i, p) in points.iter().enumerate() {
        write_atomic(&out_dir.join(sweep_file_name(i, p.mu)), p.curve.to_csv().as_bytes())?;
        summary.push_str(&format!(
            "{},{:.16e},{:.16e},{}\n",
            p.mu,
            p.final_sq_error(),
            p.final_weight_err_sq(),
            p.curve.diverged()
        ));
    }
    write_atomic(&out_dir.join("summary.csv"), summary.as_bytes())?;
    Ok(points)
}

/// Canned comparison: BLMS-1 on bicomplex data against complex LMS on
/// `ℂ(i)` data, both noiseless system identification with seed 42.
pub fn cmd_demo<W: Write>(out: &mut W, out_dir: Option<&Path>) -> Result<()> {
    let io = |source| CliError::Io {
        context: "writing demo output".into(),
        source,
    };
    writeln!(out, "algorithm,taps,mu,steps,seed,initial_weight_err_sq,final_weight_err_sq,final_sq_error").map_err(io)?;
    for alg in [Algorithm::Blms1, Algorithm::Clms] {
        let cfg = ExperimentConfig {
            noise_std: 0.01,
            ..ExperimentConfig::new(alg, 4, 0.05, 2000, 42)
        };
        let curve = harness::run_experiment(&cfg)?;
        writeln!(
            out,
            "{alg},{},{},{},{},{:.3e},{:.3e},{:.3e}",
            cfg.taps,
            cfg.mu,
            cfg.steps,
            cfg.seed,
            curve.rows.first().map_or(f64::NAN, |r| r.weight_err_sq),
            curve.final_weight_err_sq(),
            curve.final_sq_error()
        )
        .map_err(io)?;
        if let Some(dir) = out_dir {
            fs::create_dir_all(dir).map_err(io)?;
            write_atomic(&dir.join(format!("demo_{alg}.csv")), curve.to_csv().as_bytes())?;
        }
    }
    let cmp = ExperimentConfig::new(Algorithm::Blms1, 4, 0.05, 2000, 42);
    let dev = harness::compare_trajectories_with(&cmp, (Algorithm::Blms1, 0.05), (Algorithm::Clms, 0.1))?;
    writeln!(out, "max |W_blms1(mu) - W_clms(2mu)| on C(i) data: {dev:.3e}").map_err(io)?;
    Ok(())
}

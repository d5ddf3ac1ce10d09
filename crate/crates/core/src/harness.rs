//! Seeded system-identification experiments.
//!
//! A run draws a target tap vector `W_opt`, then for every step an input
//! vector `X_ℓ` and a desired value `D_ℓ = X_ℓᵀ W_opt + ν_ℓ`, and feeds them
//! to one of the [`Algorithm`] variants.
//!
//! # Draw order
//!
//! All randomness comes from one [`SeededRng`] per run, consumed in this
//! order:
//!
//! 1. the target taps, tap by tap (only when the target is random);
//! 2. for each step: the `n` input taps, then one noise sample.
//!
//! Each bicomplex sample draws its four real coordinates `x1..x4` in order.
//! In the complex domain (used whenever the complex baseline takes part)
//! only `x1, x2` are drawn and `z2` is zero. Noise is always drawn, even
//! when `noise_std = 0`, so the input stream does not depend on the noise
//! level.
//!
//! Every draw is scaled so its expected squared norm is the requested
//! power: inputs and random targets have unit power, noise has power
//! `noise_std²`.

use std::fmt::Write as _;
use std::io;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::bicomplex::{Bicomplex, Complex};
use crate::error::{Error, Result};
use crate::linalg::BicomplexVector;
use crate::lms::{Algorithm, LmsFilter, StepRecord};

/// Squared error above which a run is declared diverged.
pub const DIVERGENCE_THRESHOLD: f64 = 1e12;

/// Deterministic generator: ChaCha8 seeded from a `u64`.
#[derive(Debug, Clone)]
pub struct SeededRng {
    seed: u64,
    rng: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// One standard normal draw.
    pub fn standard_normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }
}

/// Which part of `𝔹ℂ` the synthetic data occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// All four real coordinates populated.
    Bicomplex,
    /// `ℂ(i)`-embedded data (`z2 = 0`).
    Complex,
}

impl Domain {
    fn for_algorithms(algs: &[Algorithm]) -> Domain {
        if algs.iter().any(|a| a.is_complex()) {
            Domain::Complex
        } else {
            Domain::Bicomplex
        }
    }

    /// A zero-mean Gaussian sample with `E‖Z‖² = power`.
    pub fn draw(self, rng: &mut SeededRng, power: f64) -> Bicomplex {
        match self {
            Domain::Bicomplex => {
                let s = (power / 4.0).sqrt();
                let x: [f64; 4] = std::array::from_fn(|_| s * rng.standard_normal());
                Bicomplex::raw(Complex::new(x[0], x[1]), Complex::new(x[2], x[3]))
            }
            Domain::Complex => {
                let s = (power / 2.0).sqrt();
                let re = s * rng.standard_normal();
                let im = s * rng.standard_normal();
                Bicomplex::raw(Complex::new(re, im), Complex::new(0.0, 0.0))
            }
        }
    }

    fn draw_vector(self, rng: &mut SeededRng, n: usize, power: f64) -> BicomplexVector {
        BicomplexVector::raw((0..n).map(|_| self.draw(rng, power)).collect())
    }
}

/// `steps` input vectors of `n` unit-power bicomplex taps.
pub fn gen_input(rng: &mut SeededRng, n: usize, steps: usize) -> Result<Vec<BicomplexVector>> {
    if n == 0 {
        return Err(Error::Empty);
    }
    Ok((0..steps).map(|_| Domain::Bicomplex.draw_vector(rng, n, 1.0)).collect())
}

/// `D = Xᵀ W_opt + ν` with `E‖ν‖² = noise_std²`.
pub fn synth_desired(
    w_opt: &BicomplexVector,
    x: &BicomplexVector,
    rng: &mut SeededRng,
    noise_std: f64,
) -> Result<Bicomplex> {
    synth_desired_in(Domain::Bicomplex, w_opt, x, rng, noise_std)
}

fn synth_desired_in(
    domain: Domain,
    w_opt: &BicomplexVector,
    x: &BicomplexVector,
    rng: &mut SeededRng,
    noise_std: f64,
) -> Result<Bicomplex> {
    let clean = x.dot(w_opt)?;
    Ok(clean + domain.draw(rng, noise_std * noise_std))
}

/// The system being identified.
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    /// Taps drawn from the run's generator with unit power.
    Random,
    Explicit(BicomplexVector),
}

/// Starting weights of the adaptive filter.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum InitialWeights {
    #[default]
    Zero,
    /// Start at the target (noiseless runs then never move).
    Target,
    Explicit(BicomplexVector),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputDistribution {
    #[default]
    Gaussian,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub taps: usize,
    pub mu: f64,
    pub steps: usize,
    pub seed: u64,
    pub noise_std: f64,
    pub target: Target,
    pub input: InputDistribution,
    pub initial: InitialWeights,
}

impl ExperimentConfig {
    /// Noiseless random-target configuration with zero initial weights.
    pub fn new(algorithm: Algorithm, taps: usize, mu: f64, steps: usize, seed: u64) -> Self {
        ExperimentConfig {
            algorithm,
            taps,
            mu,
            steps,
            seed,
            noise_std: 0.0,
            target: Target::Random,
            input: InputDistribution::Gaussian,
            initial: InitialWeights::Zero,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.taps < 1 {
            return Err(Error::Config("taps must be ≥ 1".into()));
        }
        if self.steps < 1 {
            return Err(Error::Config("steps must be ≥ 1".into()));
        }
        if !(self.mu.is_finite() && self.mu > 0.0) {
            return Err(Error::Config(format!("mu must be > 0, got {}", self.mu)));
        }
        if !(self.noise_std.is_finite() && self.noise_std >= 0.0) {
            return Err(Error::Config(format!("noise_std must be ≥ 0, got {}", self.noise_std)));
        }
        if let Target::Explicit(w) = &self.target {
            if w.len() != self.taps {
                return Err(Error::Config(format!(
                    "target: expected {} taps, got {}",
                    self.taps,
                    w.len()
                )));
            }
        }
        if let InitialWeights::Explicit(w) = &self.initial {
            if w.len() != self.taps {
                return Err(Error::Config(format!(
                    "initial: expected {} taps, got {}",
                    self.taps,
                    w.len()
                )));
            }
        }
        Ok(())
    }
}

/// One learning-curve row. `weight_err_sq` is measured after the update
/// made at `step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveRow {
    pub step: u64,
    pub sq_error: f64,
    pub weight_err_sq: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LearningCurve {
    pub rows: Vec<CurveRow>,
    /// Step at which the divergence guard stopped the run.
    pub diverged_at: Option<u64>,
}

impl LearningCurve {
    pub const CSV_HEADER: &'static str = "step,sq_error,weight_err_sq";

    pub fn diverged(&self) -> bool {
        self.diverged_at.is_some()
    }

    pub fn last(&self) -> Option<&CurveRow> {
        self.rows.last()
    }

    /// Final squared error, or infinity for a diverged run.
    pub fn final_sq_error(&self) -> f64 {
        match (self.diverged_at, self.last()) {
            (None, Some(r)) => r.sq_error,
            _ => f64::INFINITY,
        }
    }

    pub fn final_weight_err_sq(&self) -> f64 {
        match (self.diverged_at, self.last()) {
            (None, Some(r)) => r.weight_err_sq,
            _ => f64::INFINITY,
        }
    }

    /// CSV text: header, one row per step with 17 significant digits, and a
    /// trailing `step,inf,inf` row when the run diverged.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(48 * (self.rows.len() + 2));
        out.push_str(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(out, "{},{:.16e},{:.16e}", r.step, r.sq_error, r.weight_err_sq);
        }
        if let Some(step) = self.diverged_at {
            let _ = writeln!(out, "{step},inf,inf");
        }
        out
    }

    pub fn write_csv<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(self.to_csv().as_bytes())
    }
}

/// Streams `(X_ℓ, D_ℓ)` pairs for one run in the documented draw order.
struct Stream {
    rng: SeededRng,
    domain: Domain,
    target: BicomplexVector,
    noise_std: f64,
    taps: usize,
}

impl Stream {
    fn new(cfg: &ExperimentConfig, domain: Domain) -> Self {
        let mut rng = SeededRng::new(cfg.seed);
        let target = match &cfg.target {
            Target::Random => domain.draw_vector(&mut rng, cfg.taps, 1.0),
            Target::Explicit(w) => w.clone(),
        };
        Stream {
            rng,
            domain,
            target,
            noise_std: cfg.noise_std,
            taps: cfg.taps,
        }
    }

    fn next_sample(&mut self) -> Result<(BicomplexVector, Bicomplex)> {
        let x = self.domain.draw_vector(&mut self.rng, self.taps, 1.0);
        let d = synth_desired_in(self.domain, &self.target, &x, &mut self.rng, self.noise_std)?;
        Ok((x, d))
    }

    fn initial_weights(&self, init: &InitialWeights) -> Result<BicomplexVector> {
        match init {
            InitialWeights::Zero => BicomplexVector::zeros(self.taps),
            InitialWeights::Target => Ok(self.target.clone()),
            InitialWeights::Explicit(w) => Ok(w.clone()),
        }
    }
}

fn guard_tripped(record: &StepRecord, weights: &BicomplexVector) -> bool {
    !record.sq_error.is_finite() || record.sq_error > DIVERGENCE_THRESHOLD || !weights.is_finite()
}

/// Runs the configured algorithm and records its learning curve.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<LearningCurve> {
    cfg.validate()?;
    let domain = Domain::for_algorithms(&[cfg.algorithm]);
    let mut stream = Stream::new(cfg, domain);
    let mut filter = LmsFilter::new(cfg.algorithm, stream.initial_weights(&cfg.initial)?, cfg.mu)?;
    let mut curve = LearningCurve {
        rows: Vec::with_capacity(cfg.steps),
        diverged_at: None,
    };
    for step in 0..cfg.steps as u64 {
        let (x, d) = stream.next_sample()?;
        let record = filter.step(&x, d)?;
        let weights = filter.weights();
        if guard_tripped(&record, &weights) {
            curve.diverged_at = Some(step);
            break;
        }
        curve.rows.push(CurveRow {
            step,
            sq_error: record.sq_error,
            weight_err_sq: weights.sub(&stream.target)?.norm_sqr(),
        });
    }
    Ok(curve)
}

/// Largest weight-vector distance `max_ℓ ‖W^A_ℓ - W^B_ℓ‖` between two
/// algorithms fed the same stream, each mapped back to bicomplex form.
///
/// Both use `cfg.mu`; see [`compare_trajectories_with`] for distinct step
/// sizes.
pub fn compare_trajectories(cfg: &ExperimentConfig, a: Algorithm, b: Algorithm) -> Result<f64> {
    compare_trajectories_with(cfg, (a, cfg.mu), (b, cfg.mu))
}

pub fn compare_trajectories_with(
    cfg: &ExperimentConfig,
    (alg_a, mu_a): (Algorithm, f64),
    (alg_b, mu_b): (Algorithm, f64),
) -> Result<f64> {
    cfg.validate()?;
    let domain = Domain::for_algorithms(&[alg_a, alg_b]);
    let mut stream = Stream::new(cfg, domain);
    let init = stream.initial_weights(&cfg.initial)?;
    let mut fa = LmsFilter::new(alg_a, init.clone(), mu_a)?;
    let mut fb = LmsFilter::new(alg_b, init, mu_b)?;
    let mut worst = 0.0f64;
    for _ in 0..cfg.steps {
        let (x, d) = stream.next_sample()?;
        fa.step(&x, d)?;
        fb.step(&x, d)?;
        let dev = fa.weights().sub(&fb.weights())?.norm_sqr().sqrt();
        if !dev.is_finite() {
            return Ok(f64::INFINITY);
        }
        worst = worst.max(dev);
    }
    Ok(worst)
}

/// Outcome of one step size in a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub mu: f64,
    pub curve: LearningCurve,
}

impl SweepPoint {
    pub fn final_sq_error(&self) -> f64 {
        self.curve.final_sq_error()
    }

    pub fn final_weight_err_sq(&self) -> f64 {
        self.curve.final_weight_err_sq()
    }
}

/// One run per step size, all sharing the configuration's seed. Runs are
/// independent and execute in parallel; results keep the input order.
pub fn mu_sweep(cfg: &ExperimentConfig, mu_values: &[f64]) -> Result<Vec<SweepPoint>> {
    if mu_values.is_empty() {
        return Err(Error::Config("mu grid must not be empty".into()));
    }
    let configs = mu_values
        .iter()
        .map(|&mu| {
            let c = ExperimentConfig { mu, ..cfg.clone() };
            c.validate().map(|_| c)
        })
        .collect::<Result<Vec<_>>>()?;
    configs
        .par_iter()
        .map(|c| {
            run_experiment(c).map(|curve| SweepPoint { mu: c.mu, curve })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rng_is_deterministic() {
        let a = gen_input(&mut SeededRng::new(42), 1, 3).unwrap();
        let b = gen_input(&mut SeededRng::new(42), 1, 3).unwrap();
        assert_eq!(a, b);
        let c = gen_input(&mut SeededRng::new(43), 1, 3).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn input_has_unit_power() {
        let xs = gen_input(&mut SeededRng::new(7), 1, 100_000).unwrap();
        let mean = xs.iter().map(|x| x.norm_sqr()).sum::<f64>() / xs.len() as f64;
        assert!((0.98..=1.02).contains(&mean), "{mean}");
    }

    #[test]
    fn complex_domain_has_unit_power_and_no_j_part() {
        let mut rng = SeededRng::new(3);
        let draws: Vec<_> = (0..100_000).map(|_| Domain::Complex.draw(&mut rng, 1.0)).collect();
        assert!(draws.iter().all(|z| z.z2() == Complex::new(0.0, 0.0)));
        let mean = draws.iter().map(Bicomplex::norm_sqr).sum::<f64>() / draws.len() as f64;
        assert!((0.98..=1.02).contains(&mean), "{mean}");
    }

    #[test]
    fn synth_desired_cases() {
        let mut rng = SeededRng::new(1);
        let w = gen_input(&mut rng, 3, 1).unwrap().pop().unwrap();
        let x = gen_input(&mut rng, 3, 1).unwrap().pop().unwrap();
        assert_eq!(synth_desired(&w, &x, &mut rng, 0.0).unwrap(), x.dot(&w).unwrap());

        let zero = BicomplexVector::zeros(3).unwrap();
        let mut r1 = SeededRng::new(9);
        let mut r2 = SeededRng::new(9);
        let d = synth_desired(&zero, &x, &mut r1, 0.3).unwrap();
        assert_eq!(d, Domain::Bicomplex.draw(&mut r2, 0.09));

        let sigma = 0.1;
        let mut rng = SeededRng::new(5);
        let n = 100_000;
        let p = (0..n)
            .map(|_| synth_desired(&zero, &x, &mut rng, sigma).unwrap().norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((p / (sigma * sigma) - 1.0).abs() <= 0.03, "{p}");

        let short = BicomplexVector::zeros(2).unwrap();
        assert!(synth_desired(&short, &x, &mut rng, 0.0).is_err());
    }

    #[test]
    fn noise_level_does_not_shift_input_stream() {
        let mut quiet = ExperimentConfig::new(Algorithm::Blms1, 2, 0.05, 10, 11);
        let mut noisy = quiet.clone();
        noisy.noise_std = 0.5;
        quiet.noise_std = 0.0;
        let mut s1 = Stream::new(&quiet, Domain::Bicomplex);
        let mut s2 = Stream::new(&noisy, Domain::Bicomplex);
        assert_eq!(s1.target, s2.target);
        for _ in 0..10 {
            assert_eq!(s1.next_sample().unwrap().0, s2.next_sample().unwrap().0);
        }
    }

    #[test]
    fn validation_messages() {
        let mut cfg = ExperimentConfig::new(Algorithm::Blms1, 0, 0.05, 10, 1);
        assert_eq!(cfg.validate(), Err(Error::Config("taps must be ≥ 1".into())));
        cfg.taps = 2;
        cfg.steps = 0;
        assert!(cfg.validate().unwrap_err().to_string().contains("steps"));
        cfg.steps = 5;
        cfg.mu = 0.0;
        assert!(cfg.validate().unwrap_err().to_string().contains("mu"));
        cfg.mu = 0.1;
        cfg.target = Target::Explicit(BicomplexVector::zeros(3).unwrap());
        assert!(cfg.validate().unwrap_err().to_string().contains("target"));
        cfg.target = Target::Random;
        cfg.noise_std = -1.0;
        assert!(cfg.validate().unwrap_err().to_string().contains("noise_std"));
    }

    #[test]
    fn single_step_from_zero_reports_desired_power() {
        let cfg = ExperimentConfig {
            noise_std: 0.2,
            ..ExperimentConfig::new(Algorithm::Blms1, 3, 0.05, 1, 17)
        };
        let curve = run_experiment(&cfg).unwrap();
        assert_eq!(curve.rows.len(), 1);
        let mut stream = Stream::new(&cfg, Domain::Bicomplex);
        let (_, d) = stream.next_sample().unwrap();
        assert_eq!(curve.rows[0].sq_error, d.norm_sqr());
    }

    #[test]
    fn blms1_converges_noiseless() {
        let cfg = ExperimentConfig::new(Algorithm::Blms1, 4, 0.05, 2000, 42);
        let curve = run_experiment(&cfg).unwrap();
        assert_eq!(curve.rows.len(), 2000);
        assert!(curve.final_weight_err_sq() < 1e-16);
    }

    #[test]
    fn identical_config_gives_identical_csv() {
        let cfg = ExperimentConfig {
            noise_std: 0.1,
            ..ExperimentConfig::new(Algorithm::Blms2, 3, 0.02, 200, 5)
        };
        let a = run_experiment(&cfg).unwrap().to_csv();
        let b = run_experiment(&cfg).unwrap().to_csv();
        assert_eq!(a, b);
        assert!(a.starts_with("step,sq_error,weight_err_sq\n"));
        assert_eq!(a.lines().count(), 201);
    }

    #[test]
    fn csv_format() {
        let curve = LearningCurve {
            rows: vec![CurveRow {
                step: 0,
                sq_error: 0.1,
                weight_err_sq: 2.0,
            }],
            diverged_at: Some(1),
        };
        assert_eq!(
            curve.to_csv(),
            "step,sq_error,weight_err_sq\n0,1.0000000000000001e-1,2.0000000000000000e0\n1,inf,inf\n"
        );
    }

    #[test]
    fn oversized_mu_trips_guard() {
        let cfg = ExperimentConfig::new(Algorithm::Blms1, 4, 2.0, 2000, 42);
        let curve = run_experiment(&cfg).unwrap();
        let at = curve.diverged_at.expect("run should diverge");
        assert_eq!(curve.rows.len() as u64, at);
        assert!(curve.to_csv().ends_with(&format!("{at},inf,inf\n")));
        assert_eq!(curve.final_sq_error(), f64::INFINITY);
    }

    #[test]
    fn self_comparison_is_zero() {
        let cfg = ExperimentConfig::new(Algorithm::Blms1, 4, 0.05, 300, 2);
        assert_eq!(compare_trajectories(&cfg, Algorithm::Blms1, Algorithm::Blms1).unwrap(), 0.0);
    }

    #[test]
    fn sweep_cases() {
        let cfg = ExperimentConfig::new(Algorithm::Blms1, 4, 0.05, 500, 42);
        assert!(mu_sweep(&cfg, &[]).is_err());
        assert!(mu_sweep(&cfg, &[0.1, -0.1]).is_err());

        let single = mu_sweep(&cfg, &[0.05]).unwrap();
        assert_eq!(single[0].curve, run_experiment(&cfg).unwrap());

        let short = mu_sweep(&ExperimentConfig { steps: 200, ..cfg.clone() }, &[0.01, 0.05]).unwrap();
        let long = mu_sweep(&ExperimentConfig { steps: 1000, ..cfg.clone() }, &[0.01, 0.05]).unwrap();
        for (s, l) in short.iter().zip(&long) {
            assert_eq!(s.mu, l.mu);
            assert!(l.final_weight_err_sq() < s.final_weight_err_sq());
        }

        let mixed = mu_sweep(&cfg, &[0.05, 2.0]).unwrap();
        assert!(!mixed[0].curve.diverged());
        assert!(mixed[1].curve.diverged());
    }
}

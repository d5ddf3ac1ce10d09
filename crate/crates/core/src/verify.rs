//! Executable checks of the algebra, the BCR operators and the learning
//! rules.
//!
//! Each suite returns a list of [`Check`]s, one per identity, carrying the
//! worst measured deviation and the tolerance it was held to. Gradient
//! checks go through [`crate::gradients`] (finite differences) and are
//! compared with the closed forms used by [`crate::lms`], so the two sides
//! of every check are computed independently.

use std::fmt;
use std::time::Instant;

use crate::bicomplex::{Bicomplex, Complex, Conjugation, IdempotentPair};
use crate::error::Result;
use crate::gradients::{self, FdConfig, PartialKind, WirtingerKind};
use crate::harness::{
    compare_trajectories, compare_trajectories_with, run_experiment, Domain, ExperimentConfig, InitialWeights,
    SeededRng,
};
use crate::linalg::{BicomplexMatrix, BicomplexVector};
use crate::lms::Algorithm;

/// One verified identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    /// Suite the check belongs to (`algebra`, `norms`, ...).
    pub suite: &'static str,
    /// Name of the result being checked, e.g. `Theorem LMSR1`.
    pub reference: &'static str,
    pub detail: String,
    /// Worst observed value of the checked quantity.
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `measured ≤ tolerance` (NaN fails).
    fn at_most(suite: &'static str, reference: &'static str, detail: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Check {
            suite,
            reference,
            detail: detail.into(),
            measured,
            tolerance,
            passed: measured <= tolerance,
        }
    }

    /// Passes when `measured ≥ bound`.
    fn at_least(suite: &'static str, reference: &'static str, detail: impl Into<String>, measured: f64, bound: f64) -> Self {
        Check {
            suite,
            reference,
            detail: detail.into(),
            measured,
            tolerance: bound,
            passed: measured >= bound,
        }
    }

    fn flag(suite: &'static str, reference: &'static str, detail: impl Into<String>, ok: bool) -> Self {
        Check {
            suite,
            reference,
            detail: detail.into(),
            measured: if ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
            passed: ok,
        }
    }
}

/// Sample counts and finite-difference settings for a verification run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub fd: FdConfig,
    /// Random pairs for the algebra and norm suites.
    pub algebra_samples: usize,
    /// Random points for the gradient suites.
    pub gradient_points: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            fd: FdConfig::default(),
            algebra_samples: 10_000,
            gradient_points: 100,
            seed: 20_240_601,
        }
    }
}

/// Result of running every suite.
#[derive(Debug, Clone)]
pub struct Report {
    pub normalization: f64,
    pub fd_step: f64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "BCR normalization c = {} (matched-variable derivative = {}), finite-difference h = {:e}",
            self.normalization,
            4.0 * self.normalization,
            self.fd_step
        )?;
        writeln!(f, "{:<6} {:<14} {:<30} {:<52} {:>12} {:>10}", "status", "suite", "result", "check", "measured", "bound")?;
        for c in &self.checks {
            writeln!(
                f,
                "{:<6} {:<14} {:<30} {:<52} {:>12.3e} {:>10.1e}",
                if c.passed { "PASS" } else { "FAIL" },
                c.suite,
                c.reference,
                c.detail,
                c.measured,
                c.tolerance
            )?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// Every suite in order.
pub fn run_all(opts: &VerifyOptions) -> Result<Report> {
    let mut checks = Vec::new();
    checks.extend(algebra_suite(opts));
    checks.extend(norm_suite(opts));
    checks.extend(gradient_suite(opts)?);
    checks.extend(learning_rule_suite(opts)?);
    checks.extend(decomposition_suite()?);
    checks.extend(embedding_suite()?);
    checks.extend(convergence_suite()?);
    checks.extend(determinism_suite()?);
    Ok(Report {
        normalization: opts.fd.c(),
        fd_step: opts.fd.h(),
        checks,
    })
}

/// Direct real-coordinate expansion of the product, with `i² = j² = -1`,
/// `k² = 1` and `ij = ji = k`. Independent of the idempotent route used by
/// `Bicomplex * Bicomplex`.
pub fn cartesian_product(a: Bicomplex, b: Bicomplex) -> Bicomplex {
    let [a1, a2, a3, a4] = a.coords();
    let [b1, b2, b3, b4] = b.coords();
    Bicomplex::raw(
        Complex::new(a1 * b1 - a2 * b2 - a3 * b3 + a4 * b4, a1 * b2 + a2 * b1 - a3 * b4 - a4 * b3),
        Complex::new(a1 * b3 + a3 * b1 - a2 * b4 - a4 * b2, a1 * b4 + a4 * b1 + a2 * b3 + a3 * b2),
    )
}

fn sample(rng: &mut SeededRng) -> Bicomplex {
    // unit-variance coordinates
    Domain::Bicomplex.draw(rng, 4.0)
}

fn sample_vec(rng: &mut SeededRng, n: usize) -> BicomplexVector {
    BicomplexVector::raw((0..n).map(|_| sample(rng)).collect())
}

fn sample_complex(rng: &mut SeededRng) -> Complex {
    Complex::new(rng.standard_normal(), rng.standard_normal())
}

fn dist(a: Bicomplex, b: Bicomplex) -> f64 {
    (a - b).norm_euclid()
}

fn vdist(a: &BicomplexVector, b: &BicomplexVector) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

fn rel(err: f64, scale: f64) -> f64 {
    err / scale.max(f64::MIN_POSITIVE)
}

const ALGEBRA: &str = "algebra";
const NORMS: &str = "norms";
const GRADIENT: &str = "gradient";
const LEARNING: &str = "learning-rule";
const DECOMP: &str = "decomposition";
const EMBED: &str = "embedding";
const CONVERGENCE: &str = "convergence";
const DETERMINISM: &str = "determinism";

/// Ring structure, idempotent basis, product routes and conjugations.
pub fn algebra_suite(opts: &VerifyOptions) -> Vec<Check> {
    let mut rng = SeededRng::new(opts.seed);
    let n = opts.algebra_samples;
    let mut mul_routes = 0.0f64;
    let mut ring = 0.0f64;
    let mut round_trip = 0.0f64;
    let mut involution = 0.0f64;
    let mut composition = 0.0f64;
    let mut hom_mul = 0.0f64;
    let mut hom_add = 0.0f64;
    let mut dagger_product = 0.0f64;
    for _ in 0..n {
        let (a, b, c) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
        let (na, nb, nc) = (a.norm_euclid(), b.norm_euclid(), c.norm_euclid());

        mul_routes = mul_routes.max(rel(dist(a * b, cartesian_product(a, b)), na * nb));

        let triple = na * nb * nc;
        ring = ring
            .max(rel(dist(a * b, b * a), na * nb))
            .max(rel(dist((a * b) * c, a * (b * c)), triple))
            .max(rel(dist(a * (b + c), a * b + a * c), na * (nb + nc)))
            .max(rel(dist((a + b) + c, a + (b + c)), na + nb + nc))
            .max(rel(dist(a + b, b + a), na + nb));

        let back = Bicomplex::from_idempotent(a.to_idempotent());
        for (x, y) in back.coords().iter().zip(a.coords()) {
            round_trip = round_trip.max((x - y).abs() / y.abs().max(1.0));
        }

        for kind in Conjugation::ALL {
            involution = involution.max(dist(a.conj(kind).conj(kind), a));
            hom_mul = hom_mul.max(rel(dist((a * b).conj(kind), a.conj(kind) * b.conj(kind)), na * nb));
            hom_add = hom_add.max(rel(dist((a + b).conj(kind), a.conj(kind) + b.conj(kind)), na + nb));
        }
        composition = composition
            .max(dist(a.conj_dagger().conj_bar(), a.conj_star()))
            .max(dist(a.conj_bar().conj_dagger(), a.conj_star()))
            .max(dist(a.conj_star().conj_bar(), a.conj_dagger()))
            .max(dist(a.conj_star().conj_dagger(), a.conj_bar()));

        let s = a.z1() * a.z1() + a.z2() * a.z2();
        dagger_product = dagger_product.max(rel(dist(a * a.conj_dagger(), Bicomplex::raw(s, Complex::new(0.0, 0.0))), na * na));
    }

    let (e1, e2) = (Bicomplex::E1, Bicomplex::E2);
    let basis = [
        dist(e1 * e2, Bicomplex::ZERO),
        dist(e1 * e1, e1),
        dist(e2 * e2, e2),
        dist(e1 + e2, Bicomplex::ONE),
        dist(e1 - e2, Bicomplex::K),
        dist(Bicomplex::I * Bicomplex::J, Bicomplex::K),
        dist(Bicomplex::K * Bicomplex::K, Bicomplex::ONE),
        dist(e1.conj_bar(), e2),
    ]
    .into_iter()
    .fold(0.0, f64::max);

    vec![
        Check::at_most(ALGEBRA, "idempotent product", format!("idempotent vs Cartesian product, {n} pairs (rel)"), mul_routes, 1e-12),
        Check::at_most(ALGEBRA, "ring axioms", format!("assoc/comm/distrib, {n} triples (rel)"), ring, 1e-12),
        Check::at_most(ALGEBRA, "idempotent basis", "e1e2=0, ei²=ei, e1+e2=1, e1-e2=k, ij=k", basis, 0.0),
        Check::at_most(ALGEBRA, "idempotent map", format!("from_idempotent(to_idempotent(Z)) = Z, {n} samples"), round_trip, 1e-14),
        Check::at_most(ALGEBRA, "conjugations", "bar, dagger, star are involutions", involution, 1e-15),
        Check::at_most(ALGEBRA, "conjugations", "composition table (bar∘† = *, bar∘* = †, †∘* = bar)", composition, 1e-15),
        Check::at_most(ALGEBRA, "conjugations", "conj(ZW) = conj(Z)conj(W) (rel)", hom_mul, 1e-12),
        Check::at_most(ALGEBRA, "conjugations", "conj(Z+W) = conj(Z)+conj(W) (rel)", hom_add, 1e-12),
        Check::at_most(ALGEBRA, "conjugations", "Z·Z† = z1² + z2² (rel)", dagger_product, 1e-12),
    ]
}

/// Euclidean, hyperbolic and Finsler norms, and invertibility.
pub fn norm_suite(opts: &VerifyOptions) -> Vec<Check> {
    let mut rng = SeededRng::new(opts.seed ^ 0x6e6f726d);
    let n = opts.algebra_samples;
    let mut euclid = 0.0f64;
    let mut product_bound = f64::NEG_INFINITY;
    let mut hyper_mult = 0.0f64;
    let mut hyper_euclid = 0.0f64;
    let mut finsler_imag = 0.0f64;
    let mut finsler_real = 0.0f64;
    let mut inverse_agrees = true;
    let mut inverse_identity = 0.0f64;
    let mut zero_divisors_rejected = true;

    for idx in 0..n {
        let (a, b) = (sample(&mut rng), sample(&mut rng));
        let (na, nb) = (a.norm_euclid(), b.norm_euclid());
        euclid = euclid.max((na - a.norm_euclid_idempotent()).abs());
        product_bound = product_bound.max((a * b).norm_euclid() - 2f64.sqrt() * na * nb);

        let (ha, hb, hab) = (a.norm_hyperbolic(), b.norm_hyperbolic(), (a * b).norm_hyperbolic());
        let prod = ha * hb;
        hyper_mult = hyper_mult.max((hab.m1 - prod.m1).abs().max((hab.m2 - prod.m2).abs()));
        hyper_euclid = hyper_euclid.max((a.norm_sqr() - 0.5 * (ha.m1 * ha.m1 + ha.m2 * ha.m2)).abs());

        let fp = a.finsler_product();
        let [r, x2, x3, x4] = fp.coords();
        finsler_imag = finsler_imag.max(x2.abs().max(x3.abs()).max(x4.abs()));
        finsler_real = finsler_real.max((r - a.finsler_pow4()).abs());

        // Every fourth sample is pushed onto (or near) the zero-divisor cone.
        let z = match idx % 4 {
            0 => a,
            1 => {
                let p = a.to_idempotent();
                Bicomplex::from_idempotent(IdempotentPair::new(p.l1, Complex::new(0.0, 0.0)))
            }
            2 => {
                let p = a.to_idempotent();
                Bicomplex::from_idempotent(IdempotentPair::new(p.l1 * 1e-15, p.l2))
            }
            _ => {
                let p = a.to_idempotent();
                Bicomplex::from_idempotent(IdempotentPair::new(p.l1, p.l2 * 1e-3))
            }
        };
        let p = z.to_idempotent();
        let threshold = crate::bicomplex::ZERO_DIVISOR_THRESHOLD * z.norm_euclid().max(1.0);
        let singular = p.l1.norm().min(p.l2.norm()) <= threshold;
        // finsler_pow4 = |λ1|²|λ2|² vanishes exactly on the cone
        if (z.finsler_pow4() == 0.0) && !singular {
            inverse_agrees = false;
        }
        match z.inverse() {
            Ok(inv) => {
                if singular {
                    inverse_agrees = false;
                }
                inverse_identity = inverse_identity.max(dist(z * inv, Bicomplex::ONE));
            }
            Err(_) => {
                if !singular {
                    inverse_agrees = false;
                }
            }
        }
        if idx % 4 == 1 && z.inverse().is_ok() {
            zero_divisors_rejected = false;
        }
    }
    zero_divisors_rejected &= Bicomplex::E1.inverse().is_err() && Bicomplex::E2.inverse().is_err();

    vec![
        Check::at_most(NORMS, "Euclidean norm", "idempotent formula vs coordinates", euclid, 1e-12),
        Check::at_most(NORMS, "product inequality", format!("‖ZW‖ - √2‖Z‖‖W‖, {n} pairs"), product_bound, 1e-12),
        Check::at_most(NORMS, "hyperbolic norm", "multiplicative componentwise", hyper_mult, 1e-12),
        Check::at_most(NORMS, "hyperbolic norm", "‖Z‖² = (m1² + m2²)/2", hyper_euclid, 1e-12),
        Check::at_most(NORMS, "Finsler norm", "Z Z̄ Z* Z† has zero imaginary parts", finsler_imag, 1e-10),
        Check::at_most(NORMS, "Finsler norm", "Z Z̄ Z* Z† = |λ1|²|λ2|²", finsler_real, 1e-10),
        Check::flag(NORMS, "inverse", "inverse fails exactly below the zero-divisor threshold", inverse_agrees),
        Check::flag(NORMS, "inverse", "zero divisors (λ1=0 or λ2=0) are rejected", zero_divisors_rejected),
        Check::at_most(NORMS, "inverse", "Z·Z⁻¹ = 1 for invertible Z", inverse_identity, 1e-10),
    ]
}

fn finsler(z: Bicomplex) -> Bicomplex {
    z * z.conj_bar() * z.conj_star() * z.conj_dagger()
}

/// The three factors left after differentiating the Finsler product with
/// respect to `kind`'s matched variable.
fn finsler_cofactor(z: Bicomplex, kind: PartialKind) -> Bicomplex {
    let (zb, zs, zd) = (z.conj_bar(), z.conj_star(), z.conj_dagger());
    match kind {
        PartialKind::Z => zb * zs * zd,
        PartialKind::ZBar => z * zs * zd,
        PartialKind::ZStar => z * zb * zd,
        PartialKind::ZDagger => z * zb * zs,
    }
}

type Field = fn(Bicomplex) -> Bicomplex;

/// BC-R analytic test functions used for the Leibniz products.
const LEIBNIZ_FACTORS: [(Field, Field); 5] = [
    (|z| z, |z| z),
    (|z| z, |z| z.conj_star()),
    (|z| z * z.conj_bar(), |z| z.conj_star() * z.conj_dagger()),
    (|z| z * z * z, |z| z.conj_bar() + z.conj_dagger()),
    (|z| z.conj_star() * z.conj_star(), |z| z * z.conj_dagger() + Bicomplex::J),
];

/// Wirtinger and BCR operators against closed-form derivatives.
pub fn gradient_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let cfg = &opts.fd;
    let four_c = 4.0 * cfg.c();
    let mut rng = SeededRng::new(opts.seed ^ 0x67726164);
    let points = opts.gradient_points;
    let mut checks = Vec::new();

    // Annihilation table and matched-variable value.
    let mut annihilation = 0.0f64;
    let mut self_value = 0.0f64;
    for _ in 0..points {
        let z = sample(&mut rng);
        for kind in PartialKind::ALL {
            for other in PartialKind::ALL {
                let d = gradients::bc_partial(|w| other.matched_variable(w), z, kind, cfg)?;
                if other == kind {
                    self_value = self_value.max(dist(d, Bicomplex::ONE.scale(four_c)));
                } else {
                    annihilation = annihilation.max(d.norm_euclid());
                }
            }
        }
    }
    checks.push(Check::at_most(
        GRADIENT,
        "BCR operators",
        format!("each operator kills the 3 other conjugates, {points} pts"),
        annihilation,
        1e-7,
    ));
    checks.push(Check::at_most(
        GRADIENT,
        "BCR operators",
        format!("matched variable derivative = 4c = {four_c}"),
        self_value,
        1e-7,
    ));

    // Finsler gradient.
    let mut finsler_rel = 0.0f64;
    for _ in 0..points {
        let z = sample(&mut rng);
        for kind in PartialKind::ALL {
            let d = gradients::bc_partial(finsler, z, kind, cfg)?;
            let expected = finsler_cofactor(z, kind).scale(four_c);
            finsler_rel = finsler_rel.max(rel(dist(d, expected), expected.norm_euclid()));
        }
    }
    checks.push(Check::at_most(
        GRADIENT,
        "Finsler gradient",
        "∂(ZZ̄Z*Z†) = 4c · (other three factors) (rel)",
        finsler_rel,
        1e-5,
    ));

    // Leibniz rule over 100 random (point, product, operator) draws.
    let mut leibniz = 0.0f64;
    for idx in 0..points {
        let z = sample(&mut rng);
        let (f, g) = LEIBNIZ_FACTORS[idx % LEIBNIZ_FACTORS.len()];
        let kind = PartialKind::ALL[idx % 4];
        leibniz = leibniz.max(gradients::leibniz_residual(f, g, z, kind, cfg)?);
    }
    checks.push(Check::at_most(
        GRADIENT,
        "LeibBCn",
        format!("‖∂(fg) - f∂g - (∂f)g‖, {points} products"),
        leibniz,
        1e-6,
    ));

    // Idempotent form of ∂_Z*: 4c(∂_λ̄1 f e1 + ∂_λ̄2 f e2).
    let mut idem = 0.0f64;
    for _ in 0..points.min(20) {
        let z = sample(&mut rng);
        let f = |w: Bicomplex| w * w.conj_bar() + w.conj_star() * w.conj_star() * w;
        let lhs = gradients::bc_partial(f, z, PartialKind::ZStar, cfg)?;
        let p = z.to_idempotent();
        let on_pair = |l1: Complex, l2: Complex| f(Bicomplex::from_idempotent(IdempotentPair::new(l1, l2)));
        // Wirtinger ∂/∂λ̄ of each bicomplex coordinate, via its real components.
        let channel = |which: usize| -> Result<Bicomplex> {
            let comp = |m: usize| {
                gradients::wirtinger(
                    |l: Complex| {
                        let v = if which == 0 { on_pair(l, p.l2) } else { on_pair(p.l1, l) };
                        let x = v.coords();
                        Complex::new(x[m], 0.0)
                    },
                    if which == 0 { p.l1 } else { p.l2 },
                    WirtingerKind::DzBar,
                    cfg,
                )
            };
            // Each real coordinate's λ̄-derivative is complex; reassemble
            // Σ_m d_m · unit_m where complex d = a + i b acts as a + b·i.
            let units = [Bicomplex::ONE, Bicomplex::I, Bicomplex::J, Bicomplex::K];
            let mut acc = Bicomplex::ZERO;
            for (m, unit) in units.iter().enumerate() {
                let d = comp(m)?;
                acc += Bicomplex::raw(d, Complex::new(0.0, 0.0)) * *unit;
            }
            Ok(acc)
        };
        let rhs = (channel(0)? * Bicomplex::E1 + channel(1)? * Bicomplex::E2).scale(four_c);
        idem = idem.max(rel(dist(lhs, rhs), rhs.norm_euclid().max(1.0)));
    }
    checks.push(Check::at_most(
        GRADIENT,
        "BCR operators",
        "∂_Z* = 4c(∂_λ̄1 e1 + ∂_λ̄2 e2) (rel)",
        idem,
        1e-6,
    ));

    // Complex Wirtinger identities.
    let mut powers = 0.0f64;
    for _ in 0..points {
        let z = sample_complex(&mut rng);
        for k in 1..=3 {
            let f = |w: Complex| Complex::new(w.norm_sqr().powi(k), 0.0);
            let dzbar = gradients::wirtinger(f, z, WirtingerKind::DzBar, cfg)?;
            let dz = gradients::wirtinger(f, z, WirtingerKind::Dz, cfg)?;
            let m = z.norm_sqr().powi(k - 1) * k as f64;
            let scale = (z * m).norm().max(1.0);
            powers = powers.max((dzbar - z * m).norm() / scale).max((dz - z.conj() * m).norm() / scale);
        }
    }
    checks.push(Check::at_most(
        GRADIENT,
        "complex Wirtinger",
        "∂|z|^2k/∂z̄ = k z |z|^(2k-2), k = 1..3 (rel)",
        powers,
        1e-6,
    ));
    checks.push(complex_quadratic_forms(&mut rng, cfg)?);
    checks.push(bicomplex_quadratic_forms(&mut rng, cfg)?);

    // Stationary point of |z - a|².
    let a = sample_complex(&mut rng);
    let f = move |w: Complex| Complex::new((w - a).norm_sqr(), 0.0);
    let at_a = gradients::wirtinger(f, a, WirtingerKind::DzBar, cfg)?.norm();
    let mut away = f64::INFINITY;
    for t in 0..16 {
        let dir = Complex::from_polar(1.0, t as f64 * std::f64::consts::PI / 8.0);
        away = away.min(gradients::wirtinger(f, a + dir, WirtingerKind::DzBar, cfg)?.norm());
    }
    checks.push(Check::at_most(GRADIENT, "stationary points", "∂/∂z̄ |z-a|² = 0 at z = a", at_a, 1e-7));
    checks.push(Check::at_least(GRADIENT, "stationary points", "|∂/∂z̄ |z-a|²| at |z-a| = 1", away, 0.1));

    Ok(checks)
}

type ComplexFn<'a> = Box<dyn Fn(&[Complex]) -> Complex + 'a>;

fn complex_quadratic_forms(rng: &mut SeededRng, cfg: &FdConfig) -> Result<Check> {
    const N: usize = 3;
    let z: Vec<Complex> = (0..N).map(|_| sample_complex(rng)).collect();
    let a: Vec<Complex> = (0..N).map(|_| sample_complex(rng)).collect();
    let r: Vec<Complex> = (0..N * N).map(|_| sample_complex(rng)).collect();
    let cdot = |x: &[Complex], y: &[Complex]| -> Complex { x.iter().zip(y).map(|(p, q)| p * q).sum() };
    let rz = |v: &[Complex]| -> Vec<Complex> { (0..N).map(|i| cdot(&r[i * N..(i + 1) * N], v)).collect() };
    let rt_zbar: Vec<Complex> = (0..N)
        .map(|j| (0..N).map(|i| r[i * N + j] * z[i].conj()).sum())
        .collect();
    let conj = |v: &[Complex]| -> Vec<Complex> { v.iter().map(|x| x.conj()).collect() };
    let quad = |v: &[Complex]| cdot(&conj(v), &rz(v));
    let zero = vec![Complex::new(0.0, 0.0); N];
    let two_z: Vec<Complex> = z.iter().map(|x| x * 2.0).collect();

    let cases: [(ComplexFn<'_>, WirtingerKind, Vec<Complex>); 6] = [
        (Box::new(|v| cdot(&a, v)), WirtingerKind::Dz, a.clone()),
        (Box::new(quad), WirtingerKind::Dz, rt_zbar),
        (Box::new(quad), WirtingerKind::DzBar, rz(&z)),
        (Box::new(|v| cdot(&conj(&a), v)), WirtingerKind::DzBar, zero.clone()),
        (Box::new(|v| cdot(&conj(v), &conj(v))), WirtingerKind::Dz, zero),
        (Box::new(|v| cdot(v, v)), WirtingerKind::Dz, two_z),
    ];
    let mut worst = 0.0f64;
    for (f, which, expected) in cases.iter() {
        let g = gradients::complex_grad(f, &z, *which, cfg)?;
        let err = g.iter().zip(expected).map(|(p, q)| (p - q).norm_sqr()).sum::<f64>().sqrt();
        worst = worst.max(err);
    }
    Ok(Check::at_most(
        GRADIENT,
        "complex gradients",
        "∇(aᵀz), ∇(z̄ᵀRz), ∇(āᵀz), ∇(z̄ᵀz̄), ∇(zᵀz), n = 3",
        worst,
        1e-6,
    ))
}

fn bicomplex_quadratic_forms(rng: &mut SeededRng, cfg: &FdConfig) -> Result<Check> {
    const N: usize = 3;
    let four_c = 4.0 * cfg.c();
    let z = sample_vec(rng, N);
    let a = sample_vec(rng, N);
    let r = BicomplexMatrix::new(N, (0..N * N).map(|_| sample(rng)).collect())?;
    let rz = r.matvec(&z)?;
    let bdot = |x: &[Bicomplex], y: &[Bicomplex]| -> Bicomplex { x.iter().zip(y).map(|(&p, &q)| p * q).sum() };
    let quad = |kind: Conjugation| {
        let r = r.clone();
        move |v: &[Bicomplex]| {
            let w = BicomplexVector::raw(v.to_vec());
            let rv = r.matvec(&w).expect("dimensions fixed");
            let cv: Vec<Bicomplex> = v.iter().map(|x| x.conj(kind)).collect();
            bdot(&cv, rv.as_slice())
        }
    };
    let scaled = |v: &BicomplexVector, s: f64| BicomplexVector::raw(v.iter().map(|x| x.scale(s)).collect());

    let mut worst = 0.0f64;
    let g = gradients::grad(quad(Conjugation::Bar), &z, PartialKind::ZBar, cfg)?;
    worst = worst.max(vdist(&g, &scaled(&rz, four_c)));
    let g = gradients::grad(quad(Conjugation::Star), &z, PartialKind::ZStar, cfg)?;
    worst = worst.max(vdist(&g, &scaled(&rz, four_c)));
    let a1 = a.clone();
    let g = gradients::grad(
        move |v: &[Bicomplex]| bdot(&v.iter().map(|x| x.conj_star()).collect::<Vec<_>>(), a1.as_slice()),
        &z,
        PartialKind::ZStar,
        cfg,
    )?;
    worst = worst.max(vdist(&g, &scaled(&a, four_c)));
    let a2 = a.conj(Conjugation::Bar);
    let g = gradients::grad(move |v: &[Bicomplex]| bdot(a2.as_slice(), v), &z, PartialKind::ZStar, cfg)?;
    worst = worst.max(g.norm_sqr().sqrt());

    Ok(Check::at_most(
        GRADIENT,
        "bicomplex gradients",
        "∇_Z̄(Z̄ᵀRZ), ∇_Z*(Z*ᵀRZ) ∝ RZ; ∇_Z*(Z*ᵀa) ∝ a; ∇_Z*(āᵀZ) = 0",
        worst,
        1e-6,
    ))
}

/// Finite-difference gradient of the descended products against the closed
/// forms behind the two bicomplex update rules.
pub fn learning_rule_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    const N: usize = 3;
    let cfg = &opts.fd;
    let four_c = 4.0 * cfg.c();
    let mut rng = SeededRng::new(opts.seed ^ 0x6c6d73);
    let points = opts.gradient_points;
    let mut worst_star = 0.0f64;
    let mut worst_bar = 0.0f64;
    for _ in 0..points {
        let w = sample_vec(&mut rng, N);
        let x = sample_vec(&mut rng, N);
        let d = sample(&mut rng);
        let err = |v: &[Bicomplex]| d - x.iter().zip(v).map(|(&a, &b)| a * b).sum::<Bicomplex>();
        let e = d - x.dot(&w)?;

        let g = gradients::grad(|v: &[Bicomplex]| { let e = err(v); e * e.conj_star() }, &w, PartialKind::ZStar, cfg)?;
        let expected = BicomplexVector::raw(x.iter().map(|&xk| -(e * xk.conj_star()).scale(four_c)).collect());
        worst_star = worst_star.max(rel(vdist(&g, &expected), expected.norm_sqr().sqrt()));

        let g = gradients::grad(|v: &[Bicomplex]| { let e = err(v); e * e.conj_bar() }, &w, PartialKind::ZBar, cfg)?;
        let expected = BicomplexVector::raw(x.iter().map(|&xk| -(e * xk.conj_bar()).scale(four_c)).collect());
        worst_bar = worst_bar.max(rel(vdist(&g, &expected), expected.norm_sqr().sqrt()));
    }
    Ok(vec![
        Check::at_most(
            LEARNING,
            "Theorem LMSR1",
            format!("∇_W*(E·E*) = -2·E·X*, {points} triples (rel)"),
            worst_star,
            1e-5,
        ),
        Check::at_most(
            LEARNING,
            "Theorem SLMSalgo",
            format!("∇_W̄(E·Ē) = -2·E·X̄, {points} triples (rel)"),
            worst_bar,
            1e-5,
        ),
    ])
}

/// Seeds, taps and length of the trajectory-equivalence runs.
pub const EQUIVALENCE_SEEDS: std::ops::RangeInclusive<u64> = 1..=5;
pub const EQUIVALENCE_TAPS: usize = 4;
pub const EQUIVALENCE_STEPS: usize = 1000;
/// Small enough that the second rule (which has no convergence guarantee)
/// stays bounded over the run.
pub const EQUIVALENCE_MU: f64 = 0.01;
pub const EQUIVALENCE_NOISE: f64 = 0.1;

fn equivalence_config(seed: u64) -> ExperimentConfig {
    ExperimentConfig {
        noise_std: EQUIVALENCE_NOISE,
        ..ExperimentConfig::new(Algorithm::Blms1, EQUIVALENCE_TAPS, EQUIVALENCE_MU, EQUIVALENCE_STEPS, seed)
    }
}

/// Idempotent and Cartesian decompositions reproduce the bicomplex rules.
pub fn decomposition_suite() -> Result<Vec<Check>> {
    let pairs = [
        ("Theorem LMS1decomp", Algorithm::Blms1, Algorithm::Blms1Split),
        ("Theorem LMS2decomp", Algorithm::Blms2, Algorithm::Blms2Split),
        ("BLMS1 Cartesian split", Algorithm::Blms1, Algorithm::Blms1Cart),
        ("BLMS2 Cartesian split", Algorithm::Blms2, Algorithm::Blms2Cart),
    ];
    pairs
        .iter()
        .map(|&(reference, a, b)| {
            let worst = EQUIVALENCE_SEEDS
                .map(|seed| compare_trajectories(&equivalence_config(seed), a, b))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            Ok(Check::at_most(
                DECOMP,
                reference,
                format!("max ‖W_{a} - W_{b}‖, n=4, μ={EQUIVALENCE_MU}, 1000 steps, seeds 1-5"),
                worst,
                1e-10,
            ))
        })
        .collect()
}

/// On `ℂ(i)` data the first bicomplex rule is complex LMS at twice the step.
pub fn embedding_suite() -> Result<Vec<Check>> {
    let mut worst = 0.0f64;
    for seed in EQUIVALENCE_SEEDS {
        let cfg = equivalence_config(seed);
        let dev = compare_trajectories_with(&cfg, (Algorithm::Blms1, cfg.mu), (Algorithm::Clms, 2.0 * cfg.mu))?;
        worst = worst.max(dev);
    }
    Ok(vec![Check::at_most(
        EMBED,
        "complex LMS embedding",
        "BLMS1(μ) vs CLMS(2μ) on ℂ(i) data, 1000 steps, seeds 1-5",
        worst,
        1e-12,
    )])
}

pub const CONVERGENCE_TAPS: usize = 4;
pub const CONVERGENCE_MU: f64 = 0.05;
pub const CONVERGENCE_STEPS: usize = 2000;
pub const CONVERGENCE_NOISE: f64 = 0.1;
pub const STEADY_STATE_WINDOW: usize = 500;

/// Mean squared error over the last `window` rows.
pub fn steady_state_sq_error(curve: &crate::harness::LearningCurve, window: usize) -> f64 {
    let rows = &curve.rows[curve.rows.len().saturating_sub(window)..];
    rows.iter().map(|r| r.sq_error).sum::<f64>() / rows.len().max(1) as f64
}

/// System identification with BLMS-1 and complex LMS.
pub fn convergence_suite() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for alg in [Algorithm::Blms1, Algorithm::Clms] {
        let base = ExperimentConfig::new(alg, CONVERGENCE_TAPS, CONVERGENCE_MU, CONVERGENCE_STEPS, 42);

        let start = Instant::now();
        let curve = run_experiment(&base)?;
        let elapsed = start.elapsed().as_secs_f64();
        checks.push(Check::at_most(
            CONVERGENCE,
            "system identification",
            format!("{alg} noiseless final weight_err_sq, seed 42"),
            curve.final_weight_err_sq(),
            1e-16,
        ));
        checks.push(Check::at_most(CONVERGENCE, "system identification", format!("{alg} runtime [s]"), elapsed, 1.0));

        let mut worst_ratio = 0.0f64;
        for seed in 1..=10 {
            let c = run_experiment(&ExperimentConfig { seed, ..base.clone() })?;
            let first = c.rows.first().map_or(f64::INFINITY, |r| r.weight_err_sq);
            worst_ratio = worst_ratio.max(c.final_weight_err_sq() / first);
        }
        checks.push(Check::at_most(
            CONVERGENCE,
            "system identification",
            format!("{alg} weight_err_sq final/initial, seeds 1-10"),
            worst_ratio,
            1e-12,
        ));

        let noisy = run_experiment(&ExperimentConfig {
            noise_std: CONVERGENCE_NOISE,
            ..base.clone()
        })?;
        let ratio = steady_state_sq_error(&noisy, STEADY_STATE_WINDOW) / (CONVERGENCE_NOISE * CONVERGENCE_NOISE);
        // within a factor of 2 either way
        checks.push(Check::at_most(
            CONVERGENCE,
            "system identification",
            format!("{alg} steady-state MSE / noise power, σ = 0.1"),
            ratio.max(1.0 / ratio),
            2.0,
        ));
    }

    let mut native = 0.0f64;
    let mut decomposed = 0.0f64;
    for alg in Algorithm::ALL {
        let cfg = ExperimentConfig {
            initial: InitialWeights::Target,
            ..ExperimentConfig::new(alg, CONVERGENCE_TAPS, CONVERGENCE_MU, 500, 3)
        };
        let worst = run_experiment(&cfg)?.rows.iter().map(|r| r.weight_err_sq).fold(0.0, f64::max);
        match alg {
            Algorithm::Clms | Algorithm::Blms1 | Algorithm::Blms2 => native = native.max(worst),
            _ => decomposed = decomposed.max(worst),
        }
    }
    checks.push(Check::at_most(
        CONVERGENCE,
        "fixed point",
        "W0 = W_opt stays put exactly (clms, blms1, blms2)",
        native,
        0.0,
    ));
    // The decomposed variants carry the target through another basis, so
    // they start at rounding level; BLMS-2's update does not contract it.
    checks.push(Check::at_most(
        CONVERGENCE,
        "fixed point",
        "W0 = W_opt stays at rounding level (split, cart)",
        decomposed,
        1e-20,
    ));
    Ok(checks)
}

/// Identical configurations serialize to identical curves.
pub fn determinism_suite() -> Result<Vec<Check>> {
    let cfg = ExperimentConfig {
        noise_std: 0.1,
        ..ExperimentConfig::new(Algorithm::Blms2, 4, 0.05, 500, 42)
    };
    let a = run_experiment(&cfg)?.to_csv();
    let b = run_experiment(&cfg)?.to_csv();
    Ok(vec![Check::flag(DETERMINISM, "seeded runs", "same seed ⇒ byte-identical CSV", a == b)])
}

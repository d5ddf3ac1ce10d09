//! Least-mean-square learning rules.
//!
//! * CLMS: `w ← w + μ e x̄` over `ℂ(i)`.
//! * BLMS-1: `W ← W + 2μ E X*`.
//! * BLMS-2: `W ← W + 2μ E X̄`.
//!
//! Both bicomplex rules are also available in two decomposed forms that run
//! on pairs of complex filters: the idempotent split (`W = w1 e1 + w2 e2`)
//! and the Cartesian split (`W = W1 + W2 j`). All seven variants are
//! reachable through [`LmsFilter`], which always reports weights in the
//! bicomplex representation.
//!
//! The step functions are pure: they consume a state and return the
//! updated one.

use std::fmt;
use std::str::FromStr;

use crate::bicomplex::{Bicomplex, Complex, Conjugation, IdempotentPair};
use crate::error::{Error, Result};
use crate::linalg::BicomplexVector;

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}

fn check_mu(mu: f64) -> Result<()> {
    if mu.is_finite() && mu > 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("mu must be > 0, got {mu}")))
    }
}

/// Unconjugated complex inner product `Σ x_k w_k`.
fn cdot(x: &[Complex], w: &[Complex]) -> Complex {
    x.iter().zip(w).map(|(a, b)| a * b).sum()
}

/// Weights, step size and time index of a bicomplex filter.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterState {
    weights: BicomplexVector,
    mu: f64,
    step: u64,
}

impl FilterState {
    pub fn new(weights: BicomplexVector, mu: f64) -> Result<Self> {
        check_mu(mu)?;
        Ok(FilterState { weights, mu, step: 0 })
    }

    pub fn zeros(taps: usize, mu: f64) -> Result<Self> {
        Self::new(BicomplexVector::zeros(taps)?, mu)
    }

    pub fn weights(&self) -> &BicomplexVector {
        &self.weights
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn taps(&self) -> usize {
        self.weights.len()
    }
}

/// Weights, step size and time index of a complex filter.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexFilterState {
    weights: Vec<Complex>,
    mu: f64,
    step: u64,
}

impl ComplexFilterState {
    pub fn new(weights: Vec<Complex>, mu: f64) -> Result<Self> {
        check_mu(mu)?;
        if weights.is_empty() {
            return Err(Error::Empty);
        }
        if weights.iter().any(|w| !(w.re.is_finite() && w.im.is_finite())) {
            return Err(Error::NonFinite("ComplexFilterState::new"));
        }
        Ok(ComplexFilterState { weights, mu, step: 0 })
    }

    pub fn zeros(taps: usize, mu: f64) -> Result<Self> {
        Self::new(vec![Complex::new(0.0, 0.0); taps], mu)
    }

    pub fn weights(&self) -> &[Complex] {
        &self.weights
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn step(&self) -> u64 {
        self.step
    }
}

/// Output, error and squared error of one bicomplex step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord {
    pub y: Bicomplex,
    pub e: Bicomplex,
    /// `‖E‖²`
    pub sq_error: f64,
}

impl StepRecord {
    fn from_output(d: Bicomplex, y: Bicomplex) -> Self {
        let e = d - y;
        StepRecord {
            y,
            e,
            sq_error: e.norm_sqr(),
        }
    }
}

/// Output, error and squared error of one complex step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexStepRecord {
    pub y: Complex,
    pub e: Complex,
    pub sq_error: f64,
}

/// Which learning rule (and in which representation) a filter runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Clms,
    Blms1,
    Blms2,
    Blms1Split,
    Blms2Split,
    Blms1Cart,
    Blms2Cart,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Clms,
        Algorithm::Blms1,
        Algorithm::Blms2,
        Algorithm::Blms1Split,
        Algorithm::Blms2Split,
        Algorithm::Blms1Cart,
        Algorithm::Blms2Cart,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Clms => "clms",
            Algorithm::Blms1 => "blms1",
            Algorithm::Blms2 => "blms2",
            Algorithm::Blms1Split => "blms1_split",
            Algorithm::Blms2Split => "blms2_split",
            Algorithm::Blms1Cart => "blms1_cart",
            Algorithm::Blms2Cart => "blms2_cart",
        }
    }

    /// True for the complex baseline, which only sees the `ℂ(i)` part of
    /// its data.
    pub fn is_complex(self) -> bool {
        self == Algorithm::Clms
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<_> = Algorithm::ALL.iter().map(|a| a.name()).collect();
                Error::Config(format!("algorithm: unknown value {s:?} (expected one of {})", names.join(", ")))
            })
    }
}

/// Filter output `Y = Xᵀ W`.
pub fn predict(state: &FilterState, x: &BicomplexVector) -> Result<Bicomplex> {
    x.dot(&state.weights)
}

/// Complex LMS: `y = xᵀw`, `e = d - y`, `w ← w + μ e x̄`.
pub fn clms_step(
    state: ComplexFilterState,
    x: &[Complex],
    d: Complex,
) -> Result<(ComplexStepRecord, ComplexFilterState)> {
    check_len(state.weights.len(), x.len())?;
    let y = cdot(x, &state.weights);
    let e = d - y;
    let g = e * state.mu;
    let weights = state.weights.iter().zip(x).map(|(w, xk)| w + g * xk.conj()).collect();
    let record = ComplexStepRecord {
        y,
        e,
        sq_error: e.norm_sqr(),
    };
    Ok((
        record,
        ComplexFilterState {
            weights,
            mu: state.mu,
            step: state.step + 1,
        },
    ))
}

fn blms_step(
    state: FilterState,
    x: &BicomplexVector,
    d: Bicomplex,
    regressor: Conjugation,
) -> Result<(StepRecord, FilterState)> {
    let y = predict(&state, x)?;
    let record = StepRecord::from_output(d, y);
    let gain = record.e.scale(2.0 * state.mu);
    let weights = state.weights.scale_add(gain, &x.conj(regressor))?;
    Ok((
        record,
        FilterState {
            weights,
            mu: state.mu,
            step: state.step + 1,
        },
    ))
}

/// First bicomplex LMS: `W ← W + 2μ E X*`.
pub fn blms1_step(state: FilterState, x: &BicomplexVector, d: Bicomplex) -> Result<(StepRecord, FilterState)> {
    blms_step(state, x, d, Conjugation::Star)
}

/// Second bicomplex LMS: `W ← W + 2μ E X̄`.
pub fn blms2_step(state: FilterState, x: &BicomplexVector, d: Bicomplex) -> Result<(StepRecord, FilterState)> {
    blms_step(state, x, d, Conjugation::Bar)
}

/// Idempotent coordinates of a tap vector, as two complex vectors.
pub fn split_idempotent(v: &BicomplexVector) -> (Vec<Complex>, Vec<Complex>) {
    v.iter().map(|z| {
        let p = z.to_idempotent();
        (p.l1, p.l2)
    }).unzip()
}

/// Inverse of [`split_idempotent`].
pub fn join_idempotent(l1: &[Complex], l2: &[Complex]) -> Result<BicomplexVector> {
    check_len(l1.len(), l2.len())?;
    BicomplexVector::new(
        l1.iter()
            .zip(l2)
            .map(|(&a, &b)| Bicomplex::from_idempotent(IdempotentPair::new(a, b)))
            .collect(),
    )
}

/// Cartesian components `(Z1, Z2)` with `Z = Z1 + Z2 j`.
pub fn split_cartesian(v: &BicomplexVector) -> (Vec<Complex>, Vec<Complex>) {
    v.iter().map(|z| (z.z1(), z.z2())).unzip()
}

/// Inverse of [`split_cartesian`].
pub fn join_cartesian(z1: &[Complex], z2: &[Complex]) -> Result<BicomplexVector> {
    check_len(z1.len(), z2.len())?;
    z1.iter()
        .zip(z2)
        .map(|(&a, &b)| Bicomplex::from_complex_pair(a, b))
        .collect::<Result<Vec<_>>>()
        .and_then(BicomplexVector::new)
}

/// Per-channel results of a split step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitStepRecord {
    pub y: IdempotentPair,
    pub e: IdempotentPair,
}

/// Two complex LMS channels. `regressors[c]` selects which input channel
/// drives the update of weight channel `c`.
fn split_step(
    s1: ComplexFilterState,
    s2: ComplexFilterState,
    x_pair: (&[Complex], &[Complex]),
    d_pair: IdempotentPair,
    cross: bool,
) -> Result<(SplitStepRecord, ComplexFilterState, ComplexFilterState)> {
    let n = s1.weights.len();
    check_len(n, s2.weights.len())?;
    check_len(n, x_pair.0.len())?;
    check_len(n, x_pair.1.len())?;
    if s1.mu != s2.mu {
        return Err(Error::Config(format!(
            "split channels must share mu ({} vs {})",
            s1.mu, s2.mu
        )));
    }
    let y1 = cdot(x_pair.0, &s1.weights);
    let y2 = cdot(x_pair.1, &s2.weights);
    let e1 = d_pair.l1 - y1;
    let e2 = d_pair.l2 - y2;
    let (r1, r2) = if cross { (x_pair.1, x_pair.0) } else { (x_pair.0, x_pair.1) };
    let update = |s: ComplexFilterState, e: Complex, r: &[Complex]| {
        let g = e * (2.0 * s.mu);
        ComplexFilterState {
            weights: s.weights.iter().zip(r).map(|(w, x)| w + g * x.conj()).collect(),
            mu: s.mu,
            step: s.step + 1,
        }
    };
    let record = SplitStepRecord {
        y: IdempotentPair::new(y1, y2),
        e: IdempotentPair::new(e1, e2),
    };
    Ok((record, update(s1, e1, r1), update(s2, e2, r2)))
}

/// First bicomplex LMS as two independent complex LMS channels:
/// `w_c ← w_c + 2μ e_c x̄_c` for `c = 1, 2`.
pub fn blms1_split_step(
    s1: ComplexFilterState,
    s2: ComplexFilterState,
    x_pair: (&[Complex], &[Complex]),
    d_pair: IdempotentPair,
) -> Result<(SplitStepRecord, ComplexFilterState, ComplexFilterState)> {
    split_step(s1, s2, x_pair, d_pair, false)
}

/// Second bicomplex LMS as two cross-coupled complex channels:
/// `w1 ← w1 + 2μ e1 x̄2`, `w2 ← w2 + 2μ e2 x̄1`.
pub fn blms2_split_step(
    s1: ComplexFilterState,
    s2: ComplexFilterState,
    x_pair: (&[Complex], &[Complex]),
    d_pair: IdempotentPair,
) -> Result<(SplitStepRecord, ComplexFilterState, ComplexFilterState)> {
    split_step(s1, s2, x_pair, d_pair, true)
}

/// Which bicomplex rule a Cartesian step implements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CartesianVariant {
    Blms1,
    Blms2,
}

/// Result of one Cartesian step.
#[derive(Debug, Clone, PartialEq)]
pub struct CartesianStep {
    pub w1: Vec<Complex>,
    pub w2: Vec<Complex>,
    /// `E1` and `E2` with `E = E1 + E2 j`.
    pub e: (Complex, Complex),
}

/// One bicomplex LMS step on Cartesian components `W = W1 + W2 j`.
///
/// BLMS-1: `W1 += 2μ(E1 X̄1 + E2 X̄2)`, `W2 += 2μ(E2 X̄1 - E1 X̄2)`.
/// BLMS-2: `W1 += 2μ(E1 X̄1 - E2 X̄2)`, `W2 += 2μ(E2 X̄1 + E1 X̄2)`.
#[allow(clippy::too_many_arguments)]
pub fn blms_cartesian_step(
    variant: CartesianVariant,
    w1: &[Complex],
    w2: &[Complex],
    x1: &[Complex],
    x2: &[Complex],
    d1: Complex,
    d2: Complex,
    mu: f64,
) -> Result<CartesianStep> {
    let n = w1.len();
    check_len(n, w2.len())?;
    check_len(n, x1.len())?;
    check_len(n, x2.len())?;
    check_mu(mu)?;
    // (X1 + X2 j)(W1 + W2 j) = (X1 W1 - X2 W2) + (X1 W2 + X2 W1) j
    let y1 = cdot(x1, w1) - cdot(x2, w2);
    let y2 = cdot(x1, w2) + cdot(x2, w1);
    let (e1, e2) = (d1 - y1, d2 - y2);
    let g = 2.0 * mu;
    let sign = match variant {
        CartesianVariant::Blms1 => 1.0,
        CartesianVariant::Blms2 => -1.0,
    };
    let mut nw1 = Vec::with_capacity(n);
    let mut nw2 = Vec::with_capacity(n);
    for k in 0..n {
        let (xb1, xb2) = (x1[k].conj(), x2[k].conj());
        nw1.push(w1[k] + (e1 * xb1 + e2 * xb2 * sign) * g);
        nw2.push(w2[k] + (e2 * xb1 - e1 * xb2 * sign) * g);
    }
    Ok(CartesianStep {
        w1: nw1,
        w2: nw2,
        e: (e1, e2),
    })
}

/// Squared Euclidean norm of a bicomplex error.
pub fn loss(e: Bicomplex) -> f64 {
    e.norm_sqr()
}

/// Sum of squared norms over an error sequence.
pub fn loss_sequence<'a, I: IntoIterator<Item = &'a Bicomplex>>(errors: I) -> f64 {
    errors.into_iter().map(|e| e.norm_sqr()).sum()
}

#[derive(Debug, Clone)]
enum Engine {
    Complex(ComplexFilterState),
    Bicomplex(FilterState),
    Split(ComplexFilterState, ComplexFilterState),
    Cartesian { w1: Vec<Complex>, w2: Vec<Complex>, mu: f64, step: u64 },
}

/// Uniform driver for all seven algorithm variants.
///
/// Inputs and desired values are always bicomplex; each variant converts
/// them to its own representation. The complex baseline uses only the
/// `z1` (that is, `ℂ(i)`) part of its data and weights.
#[derive(Debug, Clone)]
pub struct LmsFilter {
    algorithm: Algorithm,
    engine: Engine,
}

impl LmsFilter {
    pub fn new(algorithm: Algorithm, initial: BicomplexVector, mu: f64) -> Result<Self> {
        check_mu(mu)?;
        let engine = match algorithm {
            Algorithm::Clms => {
                Engine::Complex(ComplexFilterState::new(initial.iter().map(Bicomplex::z1).collect(), mu)?)
            }
            Algorithm::Blms1 | Algorithm::Blms2 => Engine::Bicomplex(FilterState::new(initial, mu)?),
            Algorithm::Blms1Split | Algorithm::Blms2Split => {
                let (l1, l2) = split_idempotent(&initial);
                Engine::Split(ComplexFilterState::new(l1, mu)?, ComplexFilterState::new(l2, mu)?)
            }
            Algorithm::Blms1Cart | Algorithm::Blms2Cart => {
                let (w1, w2) = split_cartesian(&initial);
                Engine::Cartesian { w1, w2, mu, step: 0 }
            }
        };
        Ok(LmsFilter { algorithm, engine })
    }

    pub fn zeros(algorithm: Algorithm, taps: usize, mu: f64) -> Result<Self> {
        Self::new(algorithm, BicomplexVector::zeros(taps)?, mu)
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn taps(&self) -> usize {
        match &self.engine {
            Engine::Complex(s) | Engine::Split(s, _) => s.weights.len(),
            Engine::Bicomplex(s) => s.taps(),
            Engine::Cartesian { w1, .. } => w1.len(),
        }
    }

    pub fn steps(&self) -> u64 {
        match &self.engine {
            Engine::Complex(s) | Engine::Split(s, _) => s.step,
            Engine::Bicomplex(s) => s.step,
            Engine::Cartesian { step, .. } => *step,
        }
    }

    /// Current weights in the bicomplex representation.
    pub fn weights(&self) -> BicomplexVector {
        match &self.engine {
            Engine::Complex(s) => BicomplexVector::raw(
                s.weights.iter().map(|&w| Bicomplex::raw(w, Complex::new(0.0, 0.0))).collect(),
            ),
            Engine::Bicomplex(s) => s.weights.clone(),
            Engine::Split(a, b) => BicomplexVector::raw(
                a.weights
                    .iter()
                    .zip(&b.weights)
                    .map(|(&l1, &l2)| Bicomplex::from_idempotent(IdempotentPair::new(l1, l2)))
                    .collect(),
            ),
            Engine::Cartesian { w1, w2, .. } => {
                BicomplexVector::raw(w1.iter().zip(w2).map(|(&a, &b)| Bicomplex::raw(a, b)).collect())
            }
        }
    }

    /// Advances the filter by one sample and returns what it observed.
    pub fn step(&mut self, x: &BicomplexVector, d: Bicomplex) -> Result<StepRecord> {
        check_len(self.taps(), x.len())?;
        // Placeholder while the owned state is moved through the pure step.
        let engine = std::mem::replace(&mut self.engine, Engine::Cartesian {
            w1: Vec::new(),
            w2: Vec::new(),
            mu: 0.0,
            step: 0,
        });
        let (record, engine) = match (self.algorithm, engine) {
            (_, Engine::Complex(s)) => {
                let xs: Vec<Complex> = x.iter().map(Bicomplex::z1).collect();
                let (r, s) = clms_step(s, &xs, d.z1())?;
                let y = Bicomplex::raw(r.y, Complex::new(0.0, 0.0));
                let e = Bicomplex::raw(r.e, Complex::new(0.0, 0.0));
                (StepRecord { y, e, sq_error: r.sq_error }, Engine::Complex(s))
            }
            (Algorithm::Blms2, Engine::Bicomplex(s)) => {
                let (r, s) = blms2_step(s, x, d)?;
                (r, Engine::Bicomplex(s))
            }
            (_, Engine::Bicomplex(s)) => {
                let (r, s) = blms1_step(s, x, d)?;
                (r, Engine::Bicomplex(s))
            }
            (alg, Engine::Split(a, b)) => {
                let (x1, x2) = split_idempotent(x);
                let step = if alg == Algorithm::Blms2Split { blms2_split_step } else { blms1_split_step };
                let (r, a, b) = step(a, b, (&x1, &x2), d.to_idempotent())?;
                let y = Bicomplex::from_idempotent(r.y);
                (StepRecord::from_output(d, y), Engine::Split(a, b))
            }
            (alg, Engine::Cartesian { w1, w2, mu, step }) => {
                let (x1, x2) = split_cartesian(x);
                let variant = if alg == Algorithm::Blms2Cart {
                    CartesianVariant::Blms2
                } else {
                    CartesianVariant::Blms1
                };
                let out = blms_cartesian_step(variant, &w1, &w2, &x1, &x2, d.z1(), d.z2(), mu)?;
                let e = Bicomplex::raw(out.e.0, out.e.1);
                let record = StepRecord {
                    y: d - e,
                    e,
                    sq_error: e.norm_sqr(),
                };
                (record, Engine::Cartesian { w1: out.w1, w2: out.w2, mu, step: step + 1 })
            }
        };
        self.engine = engine;
        Ok(record)
    }
}

//! Numeric Wirtinger and bicomplex (BCR) differential operators.
//!
//! Everything here is computed by central finite differences over the real
//! coordinates of the arguments. The module is deliberately independent of
//! the closed-form learning rules in [`crate::lms`] so it can act as their
//! oracle.
//!
//! The four bicomplex operators are sign patterns over the real partials,
//! scaled by a normalization constant `c`:
//!
//! ```text
//! ∂_Z  = c(∂x1 - i∂x2 - j∂x3 + k∂x4)
//! ∂_Z̄  = c(∂x1 + i∂x2 - j∂x3 - k∂x4)
//! ∂_Z* = c(∂x1 + i∂x2 + j∂x3 + k∂x4)
//! ∂_Z† = c(∂x1 - i∂x2 + j∂x3 - k∂x4)
//! ```
//!
//! With the default `c = 1/2` each operator maps its own matched variable to
//! `4c = 2` and annihilates the other three conjugates, which is the
//! convention under which the LMS updates carry the factor `2μ`.

use crate::bicomplex::{Bicomplex, Complex};
use crate::error::{Error, Result};
use crate::linalg::BicomplexVector;

/// Finite-difference settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdConfig {
    h: f64,
    c: f64,
    scale_h_by_coordinate: bool,
}

impl FdConfig {
    pub const DEFAULT_H: f64 = 1e-5;
    pub const DEFAULT_C: f64 = 0.5;

    /// `h > 0` and `c ∈ {1, 1/2, 1/4}`.
    pub fn new(h: f64, c: f64, scale_h_by_coordinate: bool) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::Config(format!("finite-difference step must be > 0, got {h}")));
        }
        if ![1.0, 0.5, 0.25].contains(&c) {
            return Err(Error::Config(format!(
                "normalization constant must be one of 1, 1/2, 1/4, got {c}"
            )));
        }
        Ok(FdConfig {
            h,
            c,
            scale_h_by_coordinate,
        })
    }

    /// Default configuration with a different step.
    pub fn with_h(h: f64) -> Result<Self> {
        Self::new(h, Self::DEFAULT_C, true)
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn scale_h_by_coordinate(&self) -> bool {
        self.scale_h_by_coordinate
    }

    fn step_for(&self, x: f64) -> f64 {
        if self.scale_h_by_coordinate {
            self.h * x.abs().max(1.0)
        } else {
            self.h
        }
    }
}

impl Default for FdConfig {
    fn default() -> Self {
        FdConfig {
            h: Self::DEFAULT_H,
            c: Self::DEFAULT_C,
            scale_h_by_coordinate: true,
        }
    }
}

/// The four conjugation-adapted bicomplex derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartialKind {
    Z,
    ZBar,
    ZStar,
    ZDagger,
}

impl PartialKind {
    pub const ALL: [PartialKind; 4] = [
        PartialKind::Z,
        PartialKind::ZBar,
        PartialKind::ZStar,
        PartialKind::ZDagger,
    ];

    /// Signs applied to `(∂x1, i∂x2, j∂x3, k∂x4)`.
    pub fn signs(self) -> [f64; 4] {
        match self {
            PartialKind::Z => [1.0, -1.0, -1.0, 1.0],
            PartialKind::ZBar => [1.0, 1.0, -1.0, -1.0],
            PartialKind::ZStar => [1.0, 1.0, 1.0, 1.0],
            PartialKind::ZDagger => [1.0, -1.0, 1.0, -1.0],
        }
    }

    /// The variable this operator differentiates with respect to, as a
    /// function of `Z`.
    pub fn matched_variable(self, z: Bicomplex) -> Bicomplex {
        match self {
            PartialKind::Z => z,
            PartialKind::ZBar => z.conj_bar(),
            PartialKind::ZStar => z.conj_star(),
            PartialKind::ZDagger => z.conj_dagger(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PartialKind::Z => "d/dZ",
            PartialKind::ZBar => "d/dZbar",
            PartialKind::ZStar => "d/dZ*",
            PartialKind::ZDagger => "d/dZdagger",
        }
    }
}

/// Complex Wirtinger derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WirtingerKind {
    /// `½(∂x - i∂y)`
    Dz,
    /// `½(∂x + i∂y)`
    DzBar,
}

const UNITS: [Bicomplex; 4] = [Bicomplex::ONE, Bicomplex::I, Bicomplex::J, Bicomplex::K];

fn checked_bc(v: Bicomplex) -> Result<Bicomplex> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Evaluation(format!("non-finite field value {v:?}")))
    }
}

fn checked_c(v: Complex) -> Result<Complex> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Evaluation(format!("non-finite field value {v}")))
    }
}

fn with_coord(z: Bicomplex, m: usize, value: f64) -> Bicomplex {
    let mut x = z.coords();
    x[m] = value;
    Bicomplex::raw(Complex::new(x[0], x[1]), Complex::new(x[2], x[3]))
}

/// Central-difference partial of a complex field along the real (`im =
/// false`) or imaginary axis of variable `k`.
fn complex_axis_partial<F>(f: &F, point: &mut [Complex], k: usize, im: bool, cfg: &FdConfig) -> Result<Complex>
where
    F: Fn(&[Complex]) -> Complex,
{
    let orig = point[k];
    let x = if im { orig.im } else { orig.re };
    let h = cfg.step_for(x);
    let (xp, xm) = (x + h, x - h);
    let set = |p: &mut [Complex], v: f64| {
        p[k] = if im { Complex::new(orig.re, v) } else { Complex::new(v, orig.im) };
    };
    set(point, xp);
    let fp = checked_c(f(point));
    set(point, xm);
    let fm = checked_c(f(point));
    point[k] = orig;
    Ok((fp? - fm?) / (xp - xm))
}

/// Wirtinger gradient of a complex field of `n` complex variables, one
/// variable at a time with the others frozen.
pub fn complex_grad<F>(f: F, z: &[Complex], which: WirtingerKind, cfg: &FdConfig) -> Result<Vec<Complex>>
where
    F: Fn(&[Complex]) -> Complex,
{
    let mut point = z.to_vec();
    (0..z.len())
        .map(|k| {
            let dx = complex_axis_partial(&f, &mut point, k, false, cfg)?;
            let dy = complex_axis_partial(&f, &mut point, k, true, cfg)?;
            let idy = Complex::new(-dy.im, dy.re);
            Ok(match which {
                WirtingerKind::Dz => (dx - idy) * 0.5,
                WirtingerKind::DzBar => (dx + idy) * 0.5,
            })
        })
        .collect()
}

/// Wirtinger derivative of a complex function of one complex variable.
pub fn wirtinger<F>(f: F, z: Complex, which: WirtingerKind, cfg: &FdConfig) -> Result<Complex>
where
    F: Fn(Complex) -> Complex,
{
    let g = complex_grad(|p: &[Complex]| f(p[0]), &[z], which, cfg)?;
    Ok(g[0])
}

/// Applies a bicomplex operator to variable `k` of a multi-variable field.
fn bc_partial_at<F>(f: &F, point: &mut [Bicomplex], k: usize, which: PartialKind, cfg: &FdConfig) -> Result<Bicomplex>
where
    F: Fn(&[Bicomplex]) -> Bicomplex,
{
    let orig = point[k];
    let coords = orig.coords();
    let mut acc = Bicomplex::ZERO;
    for (m, (&sign, &unit)) in which.signs().iter().zip(UNITS.iter()).enumerate() {
        let x = coords[m];
        let h = cfg.step_for(x);
        let (xp, xm) = (x + h, x - h);
        point[k] = with_coord(orig, m, xp);
        let fp = checked_bc(f(point));
        point[k] = with_coord(orig, m, xm);
        let fm = checked_bc(f(point));
        point[k] = orig;
        let d = (fp? - fm?).scale(1.0 / (xp - xm));
        acc += (unit * d).scale(sign);
    }
    Ok(acc.scale(cfg.c))
}

/// One of `∂_Z`, `∂_Z̄`, `∂_Z*`, `∂_Z†` applied to a function of a single
/// bicomplex variable.
pub fn bc_partial<F>(f: F, z: Bicomplex, which: PartialKind, cfg: &FdConfig) -> Result<Bicomplex>
where
    F: Fn(Bicomplex) -> Bicomplex,
{
    let mut point = [z];
    bc_partial_at(&|p: &[Bicomplex]| f(p[0]), &mut point, 0, which, cfg)
}

/// Bicomplex gradient of a scalar field of `n` variables. Component `k` is
/// [`bc_partial`] with respect to variable `k`, all others frozen.
pub fn grad<F>(f: F, z: &BicomplexVector, which: PartialKind, cfg: &FdConfig) -> Result<BicomplexVector>
where
    F: Fn(&[Bicomplex]) -> Bicomplex,
{
    let mut point = z.as_slice().to_vec();
    let out = (0..z.len())
        .map(|k| bc_partial_at(&f, &mut point, k, which, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(BicomplexVector::raw(out))
}

/// `‖∂(fg) - f·∂g - ∂f·g‖` at `z`.
pub fn leibniz_residual<F, G>(f: F, g: G, z: Bicomplex, which: PartialKind, cfg: &FdConfig) -> Result<f64>
where
    F: Fn(Bicomplex) -> Bicomplex,
    G: Fn(Bicomplex) -> Bicomplex,
{
    let d_fg = bc_partial(|w| f(w) * g(w), z, which, cfg)?;
    let d_f = bc_partial(&f, z, which, cfg)?;
    let d_g = bc_partial(&g, z, which, cfg)?;
    let (fz, gz) = (checked_bc(f(z))?, checked_bc(g(z))?);
    Ok((d_fg - fz * d_g - d_f * gz).norm_euclid())
}

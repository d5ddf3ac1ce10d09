//! Bicomplex scalars.
//!
//! A bicomplex number is `Z = z1 + j z2` with `z1, z2 ∈ ℂ(i)`, or in real
//! coordinates `Z = x1 + i x2 + j x3 + k x4` where `k = ij`, `i² = j² = -1`
//! and `k² = +1`. The algebra is commutative but has zero divisors.
//!
//! Every bicomplex number also splits over the idempotent basis
//! `e1 = (1 + k)/2`, `e2 = (1 - k)/2`:
//!
//! ```text
//! Z = λ1 e1 + λ2 e2,   λ1 = z1 - i z2,   λ2 = z1 + i z2
//! ```
//!
//! In that basis addition and multiplication act componentwise, which is
//! how [`Mul`] is implemented here. Storage is always the `(z1, z2)` pair;
//! idempotent coordinates are computed on demand.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Complex numbers over `ℂ(i)`.
pub type Complex = num_complex::Complex64;

/// Relative threshold below which an idempotent component is treated as zero
/// when inverting.
pub const ZERO_DIVISOR_THRESHOLD: f64 = 1e-13;

const fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// Multiplication by the imaginary unit `i`, exact in floating point.
#[inline]
pub(crate) fn mul_i(z: Complex) -> Complex {
    Complex::new(-z.im, z.re)
}

#[inline]
fn finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Which of the three bicomplex conjugations to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Conjugation {
    /// `Z̄ = z̄1 + j z̄2`
    Bar,
    /// `Z† = z1 - j z2`
    Dagger,
    /// `Z* = z̄1 - j z̄2`
    Star,
}

impl Conjugation {
    pub const ALL: [Conjugation; 3] = [Conjugation::Bar, Conjugation::Dagger, Conjugation::Star];

    pub fn apply(self, z: Bicomplex) -> Bicomplex {
        match self {
            Conjugation::Bar => z.conj_bar(),
            Conjugation::Dagger => z.conj_dagger(),
            Conjugation::Star => z.conj_star(),
        }
    }
}

/// A bicomplex number stored as its pair of `ℂ(i)` components.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct Bicomplex {
    z1: Complex,
    z2: Complex,
}

impl Bicomplex {
    pub const ZERO: Bicomplex = Bicomplex::raw(c(0.0, 0.0), c(0.0, 0.0));
    pub const ONE: Bicomplex = Bicomplex::raw(c(1.0, 0.0), c(0.0, 0.0));
    pub const I: Bicomplex = Bicomplex::raw(c(0.0, 1.0), c(0.0, 0.0));
    pub const J: Bicomplex = Bicomplex::raw(c(0.0, 0.0), c(1.0, 0.0));
    pub const K: Bicomplex = Bicomplex::raw(c(0.0, 0.0), c(0.0, 1.0));
    /// Idempotent `e1 = (1 + k)/2`.
    pub const E1: Bicomplex = Bicomplex::raw(c(0.5, 0.0), c(0.0, 0.5));
    /// Idempotent `e2 = (1 - k)/2`.
    pub const E2: Bicomplex = Bicomplex::raw(c(0.5, 0.0), c(0.0, -0.5));

    /// Unchecked construction for values derived from already finite data.
    #[inline]
    pub(crate) const fn raw(z1: Complex, z2: Complex) -> Self {
        Bicomplex { z1, z2 }
    }

    /// Builds `z1 + j z2`, rejecting non-finite components.
    pub fn from_complex_pair(z1: Complex, z2: Complex) -> Result<Self> {
        if finite(z1) && finite(z2) {
            Ok(Bicomplex { z1, z2 })
        } else {
            Err(Error::NonFinite("Bicomplex::from_complex_pair"))
        }
    }

    /// Builds `x1 + i x2 + j x3 + k x4` from real coordinates.
    pub fn from_coords(x: [f64; 4]) -> Result<Self> {
        if x.iter().all(|v| v.is_finite()) {
            Ok(Bicomplex::raw(c(x[0], x[1]), c(x[2], x[3])))
        } else {
            Err(Error::NonFinite("Bicomplex::from_coords"))
        }
    }

    pub fn from_real(x: f64) -> Result<Self> {
        Self::from_coords([x, 0.0, 0.0, 0.0])
    }

    /// Embeds a `ℂ(i)` number (`z2 = 0`).
    pub fn from_complex(z: Complex) -> Result<Self> {
        Self::from_complex_pair(z, c(0.0, 0.0))
    }

    #[inline]
    pub fn z1(&self) -> Complex {
        self.z1
    }

    #[inline]
    pub fn z2(&self) -> Complex {
        self.z2
    }

    /// Real coordinates `[x1, x2, x3, x4]`.
    #[inline]
    pub fn coords(&self) -> [f64; 4] {
        [self.z1.re, self.z1.im, self.z2.re, self.z2.im]
    }

    pub fn is_finite(&self) -> bool {
        finite(self.z1) && finite(self.z2)
    }

    /// Idempotent coordinates `(λ1, λ2) = (z1 - i z2, z1 + i z2)`.
    #[inline]
    pub fn to_idempotent(&self) -> IdempotentPair {
        let iz2 = mul_i(self.z2);
        IdempotentPair {
            l1: self.z1 - iz2,
            l2: self.z1 + iz2,
        }
    }

    /// Inverse of [`Bicomplex::to_idempotent`]:
    /// `z1 = (λ1 + λ2)/2`, `z2 = i(λ1 - λ2)/2`.
    #[inline]
    pub fn from_idempotent(p: IdempotentPair) -> Self {
        Bicomplex::raw((p.l1 + p.l2) * 0.5, mul_i(p.l1 - p.l2) * 0.5)
    }

    #[inline]
    pub fn conj_bar(&self) -> Self {
        Bicomplex::raw(self.z1.conj(), self.z2.conj())
    }

    #[inline]
    pub fn conj_dagger(&self) -> Self {
        Bicomplex::raw(self.z1, -self.z2)
    }

    #[inline]
    pub fn conj_star(&self) -> Self {
        Bicomplex::raw(self.z1.conj(), -self.z2.conj())
    }

    pub fn conj(&self, kind: Conjugation) -> Self {
        kind.apply(*self)
    }

    /// Squared Euclidean norm `x1² + x2² + x3² + x4²`.
    #[inline]
    pub fn norm_sqr(&self) -> f64 {
        self.z1.norm_sqr() + self.z2.norm_sqr()
    }

    /// Euclidean norm in `ℝ⁴`.
    pub fn norm_euclid(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Euclidean norm through idempotent coordinates,
    /// `(1/√2)·√(|λ1|² + |λ2|²)`. Agrees with [`Bicomplex::norm_euclid`].
    pub fn norm_euclid_idempotent(&self) -> f64 {
        let p = self.to_idempotent();
        ((p.l1.norm_sqr() + p.l2.norm_sqr()) * 0.5).sqrt()
    }

    /// Hyperbolic-valued norm `|λ1| e1 + |λ2| e2`.
    pub fn norm_hyperbolic(&self) -> HyperbolicNorm {
        let p = self.to_idempotent();
        HyperbolicNorm {
            m1: p.l1.norm(),
            m2: p.l2.norm(),
        }
    }

    /// Fourth power of the Finsler-type norm, `Z Z̄ Z* Z† = |λ1|²·|λ2|²`.
    pub fn finsler_pow4(&self) -> f64 {
        let p = self.to_idempotent();
        p.l1.norm_sqr() * p.l2.norm_sqr()
    }

    /// The four-factor product `Z Z̄ Z* Z†`, computed in bicomplex
    /// arithmetic. Its value is real up to rounding.
    pub fn finsler_product(&self) -> Bicomplex {
        *self * self.conj_bar() * self.conj_star() * self.conj_dagger()
    }

    /// Multiplicative inverse, `λ1⁻¹ e1 + λ2⁻¹ e2`.
    ///
    /// Fails with [`Error::ZeroDivisor`] when
    /// `min(|λ1|, |λ2|) ≤ 1e-13 · max(1, ‖Z‖)`.
    pub fn inverse(&self) -> Result<Self> {
        let p = self.to_idempotent();
        let (m1, m2) = (p.l1.norm(), p.l2.norm());
        let threshold = ZERO_DIVISOR_THRESHOLD * self.norm_euclid().max(1.0);
        let min_modulus = m1.min(m2);
        if min_modulus <= threshold {
            return Err(Error::ZeroDivisor {
                min_modulus,
                threshold,
            });
        }
        Ok(Bicomplex::from_idempotent(IdempotentPair {
            l1: p.l1.inv(),
            l2: p.l2.inv(),
        }))
    }

    /// Multiplies by a real scalar.
    #[inline]
    pub fn scale(&self, s: f64) -> Self {
        Bicomplex::raw(self.z1 * s, self.z2 * s)
    }
}

impl fmt::Debug for Bicomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.coords();
        write!(f, "Bicomplex[{a:?}, {b:?}, {c:?}, {d:?}]")
    }
}

impl fmt::Display for Bicomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.coords();
        write!(f, "{a} {:+}i {:+}j {:+}k", b, c, d)
    }
}

impl Add for Bicomplex {
    type Output = Bicomplex;
    #[inline]
    fn add(self, rhs: Bicomplex) -> Bicomplex {
        Bicomplex::raw(self.z1 + rhs.z1, self.z2 + rhs.z2)
    }
}

impl Sub for Bicomplex {
    type Output = Bicomplex;
    #[inline]
    fn sub(self, rhs: Bicomplex) -> Bicomplex {
        Bicomplex::raw(self.z1 - rhs.z1, self.z2 - rhs.z2)
    }
}

impl Neg for Bicomplex {
    type Output = Bicomplex;
    #[inline]
    fn neg(self) -> Bicomplex {
        Bicomplex::raw(-self.z1, -self.z2)
    }
}

impl Mul for Bicomplex {
    type Output = Bicomplex;
    /// Componentwise product in idempotent coordinates.
    #[inline]
    fn mul(self, rhs: Bicomplex) -> Bicomplex {
        Bicomplex::from_idempotent(self.to_idempotent() * rhs.to_idempotent())
    }
}

impl Mul<f64> for Bicomplex {
    type Output = Bicomplex;
    #[inline]
    fn mul(self, rhs: f64) -> Bicomplex {
        self.scale(rhs)
    }
}

impl AddAssign for Bicomplex {
    fn add_assign(&mut self, rhs: Bicomplex) {
        *self = *self + rhs;
    }
}

impl SubAssign for Bicomplex {
    fn sub_assign(&mut self, rhs: Bicomplex) {
        *self = *self - rhs;
    }
}

impl MulAssign for Bicomplex {
    fn mul_assign(&mut self, rhs: Bicomplex) {
        *self = *self * rhs;
    }
}

impl Sum for Bicomplex {
    fn sum<I: Iterator<Item = Bicomplex>>(iter: I) -> Bicomplex {
        iter.fold(Bicomplex::ZERO, Add::add)
    }
}

/// Serialized as the 4-tuple `[x1, x2, x3, x4]`.
impl Serialize for Bicomplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Bicomplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let x = <[f64; 4]>::deserialize(deserializer)?;
        Bicomplex::from_coords(x).map_err(D::Error::custom)
    }
}

/// Coefficients of `e1` and `e2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IdempotentPair {
    pub l1: Complex,
    pub l2: Complex,
}

impl IdempotentPair {
    pub fn new(l1: Complex, l2: Complex) -> Self {
        IdempotentPair { l1, l2 }
    }
}

impl Add for IdempotentPair {
    type Output = IdempotentPair;
    fn add(self, rhs: IdempotentPair) -> IdempotentPair {
        IdempotentPair::new(self.l1 + rhs.l1, self.l2 + rhs.l2)
    }
}

impl Mul for IdempotentPair {
    type Output = IdempotentPair;
    #[inline]
    fn mul(self, rhs: IdempotentPair) -> IdempotentPair {
        IdempotentPair::new(self.l1 * rhs.l1, self.l2 * rhs.l2)
    }
}

/// Hyperbolic-valued norm `m1 e1 + m2 e2` with `m1, m2 ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HyperbolicNorm {
    pub m1: f64,
    pub m2: f64,
}

impl HyperbolicNorm {
    pub fn is_zero(&self) -> bool {
        self.m1 == 0.0 && self.m2 == 0.0
    }
}

impl Mul for HyperbolicNorm {
    type Output = HyperbolicNorm;
    fn mul(self, rhs: HyperbolicNorm) -> HyperbolicNorm {
        HyperbolicNorm {
            m1: self.m1 * rhs.m1,
            m2: self.m2 * rhs.m2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bc(x1: f64, x2: f64, x3: f64, x4: f64) -> Bicomplex {
        Bicomplex::from_coords([x1, x2, x3, x4]).unwrap()
    }

    /// Direct expansion with `i² = j² = -1`, `k² = 1`, `ij = ji = k`.
    fn cartesian_mul(a: Bicomplex, b: Bicomplex) -> Bicomplex {
        let [a1, a2, a3, a4] = a.coords();
        let [b1, b2, b3, b4] = b.coords();
        bc(
            a1 * b1 - a2 * b2 - a3 * b3 + a4 * b4,
            a1 * b2 + a2 * b1 - a3 * b4 - a4 * b3,
            a1 * b3 + a3 * b1 - a2 * b4 - a4 * b2,
            a1 * b4 + a4 * b1 + a2 * b3 + a3 * b2,
        )
    }

    fn close(a: Bicomplex, b: Bicomplex, tol: f64) -> bool {
        (a - b).norm_euclid() <= tol
    }

    #[test]
    fn to_idempotent_examples() {
        let p = Bicomplex::ZERO.to_idempotent();
        assert_eq!((p.l1, p.l2), (c(0.0, 0.0), c(0.0, 0.0)));

        let p = bc(1.0, 1.0, 1.0, 1.0).to_idempotent();
        assert_eq!((p.l1, p.l2), (c(2.0, 0.0), c(0.0, 2.0)));

        let p = Bicomplex::K.to_idempotent();
        assert_eq!((p.l1, p.l2), (c(1.0, 0.0), c(-1.0, 0.0)));
    }

    #[test]
    fn from_idempotent_examples() {
        let one = Bicomplex::from_idempotent(IdempotentPair::new(c(1.0, 0.0), c(1.0, 0.0)));
        assert_eq!(one, Bicomplex::ONE);
        let k = Bicomplex::from_idempotent(IdempotentPair::new(c(1.0, 0.0), c(-1.0, 0.0)));
        assert_eq!(k, Bicomplex::K);
        let z = Bicomplex::from_idempotent(IdempotentPair::new(c(2.0, 0.0), c(0.0, 2.0)));
        assert_eq!(z, bc(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn basis_products() {
        assert_eq!(Bicomplex::E1 * Bicomplex::E2, Bicomplex::ZERO);
        assert_eq!(Bicomplex::E1 * Bicomplex::E1, Bicomplex::E1);
        assert_eq!(Bicomplex::E2 * Bicomplex::E2, Bicomplex::E2);
        assert_eq!(Bicomplex::E1 + Bicomplex::E2, Bicomplex::ONE);
        assert_eq!(Bicomplex::E1 - Bicomplex::E2, Bicomplex::K);
        assert_eq!(Bicomplex::I * Bicomplex::J, Bicomplex::K);
        assert_eq!(Bicomplex::K * Bicomplex::K, Bicomplex::ONE);
        assert_eq!(Bicomplex::J * Bicomplex::J, -Bicomplex::ONE);
    }

    #[test]
    fn addition_examples() {
        assert_eq!(bc(1.0, 0.0, 1.0, 0.0) + bc(0.0, 1.0, 0.0, 1.0), bc(1.0, 1.0, 1.0, 1.0));
        let z = bc(0.3, -1.0, 2.5, 7.0);
        assert_eq!(z + Bicomplex::ZERO, z);
    }

    #[test]
    fn idempotent_componentwise_product() {
        let a = Bicomplex::E1.scale(2.0) + Bicomplex::E2.scale(3.0);
        let b = Bicomplex::E1.scale(5.0) + Bicomplex::E2.scale(7.0);
        let p = (a * b).to_idempotent();
        assert_eq!((p.l1, p.l2), (c(10.0, 0.0), c(21.0, 0.0)));
    }

    #[test]
    fn mul_matches_cartesian_expansion() {
        let a = bc(0.5, -1.25, 2.0, 3.5);
        let b = bc(-2.0, 0.75, 1.5, -0.25);
        assert!(close(a * b, cartesian_mul(a, b), 1e-12));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Bicomplex::from_real(2.0).unwrap().inverse().unwrap(), bc(0.5, 0.0, 0.0, 0.0));

        // 2e1 + 2i e2 -> 0.5 e1 - 0.5i e2
        let z = Bicomplex::from_idempotent(IdempotentPair::new(c(2.0, 0.0), c(0.0, 2.0)));
        let p = z.inverse().unwrap().to_idempotent();
        assert!((p.l1 - c(0.5, 0.0)).norm() < 1e-15);
        assert!((p.l2 - c(0.0, -0.5)).norm() < 1e-15);

        assert!(matches!(Bicomplex::E1.inverse(), Err(Error::ZeroDivisor { .. })));
        assert!(matches!(Bicomplex::ZERO.inverse(), Err(Error::ZeroDivisor { .. })));
    }

    #[test]
    fn inverse_threshold_is_relative() {
        // A tiny second component relative to a large norm is treated as singular.
        let big = Bicomplex::from_idempotent(IdempotentPair::new(c(1e6, 0.0), c(1e-8, 0.0)));
        assert!(big.inverse().is_err());
        let ok = Bicomplex::from_idempotent(IdempotentPair::new(c(1.0, 0.0), c(1e-9, 0.0)));
        let inv = ok.inverse().unwrap();
        assert!(close(ok * inv, Bicomplex::ONE, 1e-10));
    }

    #[test]
    fn conjugation_examples() {
        let z = bc(1.0, 1.0, 1.0, 1.0);
        assert_eq!(z.conj_bar(), bc(1.0, -1.0, 1.0, -1.0));
        assert_eq!(z.conj_dagger(), bc(1.0, 1.0, -1.0, -1.0));
        assert_eq!(z.conj_star(), bc(1.0, -1.0, -1.0, 1.0));
        assert_eq!(Bicomplex::E1.conj_bar(), Bicomplex::E2);
        assert_eq!(Bicomplex::E2.conj_bar(), Bicomplex::E1);

        let w = Bicomplex::from_idempotent(IdempotentPair::new(c(2.0, 0.0), c(0.0, 2.0)));
        let p = w.conj_star().to_idempotent();
        assert_eq!((p.l1, p.l2), (c(2.0, 0.0), c(0.0, -2.0)));
    }

    #[test]
    fn conjugations_in_idempotent_coordinates() {
        let z = bc(0.3, -1.7, 2.2, 0.9);
        let p = z.to_idempotent();
        let bar = z.conj_bar().to_idempotent();
        let dag = z.conj_dagger().to_idempotent();
        let star = z.conj_star().to_idempotent();
        assert_eq!((bar.l1, bar.l2), (p.l2.conj(), p.l1.conj()));
        assert_eq!((dag.l1, dag.l2), (p.l2, p.l1));
        assert_eq!((star.l1, star.l2), (p.l1.conj(), p.l2.conj()));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(bc(1.0, 1.0, 1.0, 1.0).norm_euclid(), 2.0);
        assert_eq!(bc(1.0, 1.0, 1.0, 1.0).norm_euclid_idempotent(), 2.0);
        assert_eq!(Bicomplex::ZERO.norm_euclid(), 0.0);
        assert!((Bicomplex::E1.norm_euclid() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((Bicomplex::E1.norm_euclid_idempotent() - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn hyperbolic_norm_examples() {
        let z = Bicomplex::from_idempotent(IdempotentPair::new(c(2.0, 0.0), c(0.0, 2.0)));
        assert_eq!(z.norm_hyperbolic(), HyperbolicNorm { m1: 2.0, m2: 2.0 });
        assert_eq!(Bicomplex::E1.norm_hyperbolic(), HyperbolicNorm { m1: 1.0, m2: 0.0 });
        assert_eq!(Bicomplex::ONE.norm_hyperbolic(), HyperbolicNorm { m1: 1.0, m2: 1.0 });
        assert!(Bicomplex::ZERO.norm_hyperbolic().is_zero());
    }

    #[test]
    fn finsler_examples() {
        assert_eq!(bc(1.0, 1.0, 1.0, 1.0).finsler_pow4(), 16.0);
        assert_eq!(Bicomplex::E1.finsler_pow4(), 0.0);
        assert_eq!(Bicomplex::from_real(3.0).unwrap().finsler_pow4(), 81.0);

        let prod = bc(1.0, 1.0, 1.0, 1.0).finsler_product();
        assert!(close(prod, bc(16.0, 0.0, 0.0, 0.0), 1e-12));
    }

    #[test]
    fn constructors_reject_non_finite() {
        assert!(Bicomplex::from_coords([f64::NAN, 0.0, 0.0, 0.0]).is_err());
        assert!(Bicomplex::from_real(f64::INFINITY).is_err());
        assert!(Bicomplex::from_complex_pair(c(0.0, 0.0), c(0.0, f64::NEG_INFINITY)).is_err());
    }

    #[test]
    fn serde_uses_four_tuple() {
        let z = bc(1.0, -2.0, 0.5, 4.0);
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, "[1.0,-2.0,0.5,4.0]");
        let back: Bicomplex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
        assert!(serde_json::from_str::<Bicomplex>("[1.0,2.0,3.0]").is_err());
    }

    #[test]
    fn complex_pair_round_trip_is_bit_exact() {
        let z = bc(0.1, 0.2, 0.3, 0.4);
        assert_eq!(Bicomplex::from_complex_pair(z.z1(), z.z2()).unwrap(), z);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn coord() -> impl Strategy<Value = f64> {
            -10.0f64..10.0
        }

        fn bicomplex() -> impl Strategy<Value = Bicomplex> {
            [coord(), coord(), coord(), coord()].prop_map(|x| Bicomplex::from_coords(x).unwrap())
        }

        fn rel_close(a: Bicomplex, b: Bicomplex, scale: f64, tol: f64) -> bool {
            (a - b).norm_euclid() <= tol * scale.max(1.0)
        }

        proptest! {
            #[test]
            fn idempotent_round_trip(z in bicomplex()) {
                let back = Bicomplex::from_idempotent(z.to_idempotent());
                for (a, b) in back.coords().iter().zip(z.coords()) {
                    prop_assert!((a - b).abs() <= 1e-14 * b.abs().max(1.0));
                }
            }

            #[test]
            fn product_matches_expansion(a in bicomplex(), b in bicomplex()) {
                let scale = a.norm_euclid() * b.norm_euclid();
                prop_assert!(rel_close(a * b, cartesian_mul(a, b), scale, 1e-12));
            }

            #[test]
            fn ring_axioms(a in bicomplex(), b in bicomplex(), d in bicomplex()) {
                let s = a.norm_euclid() * b.norm_euclid() * d.norm_euclid()
                    + a.norm_euclid() * (b.norm_euclid() + d.norm_euclid());
                prop_assert!(rel_close(a * b, b * a, s, 1e-12));
                prop_assert!(rel_close((a * b) * d, a * (b * d), s, 1e-12));
                prop_assert!(rel_close(a * (b + d), a * b + a * d, s, 1e-12));
                prop_assert!(rel_close((a + b) + d, a + (b + d), s, 1e-12));
            }

            #[test]
            fn conjugations_are_ring_homomorphisms(a in bicomplex(), b in bicomplex()) {
                let s = a.norm_euclid() * b.norm_euclid();
                for kind in Conjugation::ALL {
                    prop_assert!(rel_close((a * b).conj(kind), a.conj(kind) * b.conj(kind), s, 1e-12));
                    prop_assert_eq!((a + b).conj(kind), a.conj(kind) + b.conj(kind));
                }
            }

            #[test]
            fn norm_inequalities(a in bicomplex(), b in bicomplex()) {
                let bound = 2f64.sqrt() * a.norm_euclid() * b.norm_euclid();
                prop_assert!((a * b).norm_euclid() <= bound + 1e-12 * bound.max(1.0));
                let h = a.norm_hyperbolic();
                let n2 = a.norm_sqr();
                prop_assert!((n2 - 0.5 * (h.m1 * h.m1 + h.m2 * h.m2)).abs() <= 1e-12 * n2.max(1.0));
            }
        }
    }
}

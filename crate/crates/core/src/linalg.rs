//! Tap vectors and square matrices over bicomplex scalars.

use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::bicomplex::{Bicomplex, Conjugation};
use crate::error::{Error, Result};

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}

/// A non-empty ordered sequence of bicomplex numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Bicomplex>", into = "Vec<Bicomplex>")]
pub struct BicomplexVector {
    elems: Vec<Bicomplex>,
}

impl BicomplexVector {
    pub fn new(elems: Vec<Bicomplex>) -> Result<Self> {
        if elems.is_empty() {
            return Err(Error::Empty);
        }
        if elems.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite("BicomplexVector::new"));
        }
        Ok(BicomplexVector { elems })
    }

    pub(crate) fn raw(elems: Vec<Bicomplex>) -> Self {
        debug_assert!(!elems.is_empty());
        BicomplexVector { elems }
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![Bicomplex::ZERO; n])
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// Always false; kept for the `len`/`is_empty` convention.
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn as_slice(&self) -> &[Bicomplex] {
        &self.elems
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Bicomplex> {
        self.elems.iter()
    }

    pub fn into_vec(self) -> Vec<Bicomplex> {
        self.elems
    }

    pub fn is_finite(&self) -> bool {
        self.elems.iter().all(Bicomplex::is_finite)
    }

    /// Unconjugated bilinear product `Σ X_k W_k`.
    pub fn dot(&self, other: &BicomplexVector) -> Result<Bicomplex> {
        check_len(self.len(), other.len())?;
        Ok(self.elems.iter().zip(&other.elems).map(|(&x, &w)| x * w).sum())
    }

    /// Applies a conjugation elementwise.
    pub fn conj(&self, kind: Conjugation) -> BicomplexVector {
        BicomplexVector::raw(self.elems.iter().map(|z| z.conj(kind)).collect())
    }

    /// `self + s·v`, elementwise.
    pub fn scale_add(&self, s: Bicomplex, v: &BicomplexVector) -> Result<BicomplexVector> {
        check_len(self.len(), v.len())?;
        Ok(BicomplexVector::raw(
            self.elems.iter().zip(&v.elems).map(|(&w, &x)| w + s * x).collect(),
        ))
    }

    pub fn sub(&self, other: &BicomplexVector) -> Result<BicomplexVector> {
        check_len(self.len(), other.len())?;
        Ok(BicomplexVector::raw(
            self.elems.iter().zip(&other.elems).map(|(&a, &b)| a - b).collect(),
        ))
    }

    /// `Σ_k ‖Z_k‖²`.
    pub fn norm_sqr(&self) -> f64 {
        self.elems.iter().map(Bicomplex::norm_sqr).sum()
    }
}

impl Index<usize> for BicomplexVector {
    type Output = Bicomplex;
    fn index(&self, i: usize) -> &Bicomplex {
        &self.elems[i]
    }
}

impl IndexMut<usize> for BicomplexVector {
    fn index_mut(&mut self, i: usize) -> &mut Bicomplex {
        &mut self.elems[i]
    }
}

impl TryFrom<Vec<Bicomplex>> for BicomplexVector {
    type Error = Error;
    fn try_from(v: Vec<Bicomplex>) -> Result<Self> {
        BicomplexVector::new(v)
    }
}

impl From<BicomplexVector> for Vec<Bicomplex> {
    fn from(v: BicomplexVector) -> Vec<Bicomplex> {
        v.elems
    }
}

impl<'a> IntoIterator for &'a BicomplexVector {
    type Item = &'a Bicomplex;
    type IntoIter = std::slice::Iter<'a, Bicomplex>;
    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

/// Free-function form of [`BicomplexVector::dot`].
pub fn dot(x: &BicomplexVector, w: &BicomplexVector) -> Result<Bicomplex> {
    x.dot(w)
}

/// Free-function form of [`BicomplexVector::conj`].
pub fn conj_vec(v: &BicomplexVector, kind: Conjugation) -> BicomplexVector {
    v.conj(kind)
}

/// Free-function form of [`BicomplexVector::scale_add`].
pub fn scale_add(w: &BicomplexVector, s: Bicomplex, v: &BicomplexVector) -> Result<BicomplexVector> {
    w.scale_add(s, v)
}

/// Square `n × n` matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct BicomplexMatrix {
    n: usize,
    entries: Vec<Bicomplex>,
}

impl BicomplexMatrix {
    pub fn new(n: usize, entries: Vec<Bicomplex>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        check_len(n * n, entries.len())?;
        if entries.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite("BicomplexMatrix::new"));
        }
        Ok(BicomplexMatrix { n, entries })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let entries = (0..n * n)
            .map(|idx| if idx / n.max(1) == idx % n.max(1) { Bicomplex::ONE } else { Bicomplex::ZERO })
            .collect();
        Self::new(n, entries)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Bicomplex {
        self.entries[row * self.n + col]
    }

    pub fn transpose(&self) -> BicomplexMatrix {
        let n = self.n;
        let entries = (0..n * n).map(|idx| self.get(idx % n, idx / n)).collect();
        BicomplexMatrix { n, entries }
    }

    pub fn matvec(&self, z: &BicomplexVector) -> Result<BicomplexVector> {
        check_len(self.n, z.len())?;
        Ok(BicomplexVector::raw(
            self.entries
                .chunks_exact(self.n)
                .map(|row| row.iter().zip(z).map(|(&r, &v)| r * v).sum())
                .collect(),
        ))
    }
}

/// Free-function form of [`BicomplexMatrix::matvec`].
pub fn matvec(r: &BicomplexMatrix, z: &BicomplexVector) -> Result<BicomplexVector> {
    r.matvec(z)
}

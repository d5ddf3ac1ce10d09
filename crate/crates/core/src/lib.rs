//! Bicomplex arithmetic, bicomplex Wirtinger (BCR) derivatives and
//! bicomplex least-mean-square adaptive filters.
//!
//! * [`bicomplex`]: scalars, idempotent coordinates, conjugations, norms.
//! * [`linalg`]: tap vectors and square matrices.
//! * [`gradients`]: finite-difference Wirtinger and BCR operators.
//! * [`lms`]: complex LMS, the two bicomplex LMS rules and their
//!   decomposed forms.
//! * [`harness`]: seeded system-identification runs, trajectory
//!   comparison and step-size sweeps.
//! * [`verify`]: executable checks of the algebraic and learning-rule
//!   identities, reported as a table.

pub mod bicomplex;
pub mod error;
pub mod gradients;
pub mod harness;
pub mod linalg;
pub mod lms;
pub mod verify;

pub use bicomplex::{Bicomplex, Complex, Conjugation, HyperbolicNorm, IdempotentPair};
pub use error::{Error, Result};
pub use gradients::{FdConfig, PartialKind, WirtingerKind};
pub use harness::{ExperimentConfig, LearningCurve, SeededRng, Target};
pub use linalg::{BicomplexMatrix, BicomplexVector};
pub use lms::{Algorithm, LmsFilter, StepRecord};

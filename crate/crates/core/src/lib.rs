//! Exact computation of tail-invariant measures on stationary and
//! finite-rank Bratteli diagrams.
//!
//! The crate works entirely on the clopen algebra of the path space: a
//! measure is known through the values it assigns to cylinder sets, and
//! every value is an exact element of a real number field. Nothing in a
//! decision path uses floating point.
//!
//! Modules, bottom-up:
//!
//! * [`exact`]: rationals, integer polynomials, real algebraic numbers,
//!   number-field arithmetic and finitely generated additive subgroups.
//! * [`diagram`]: incidence-matrix diagrams, vertex classes, telescoping,
//!   cylinder and clopen sets.
//! * [`measure`]: ergodic measures, exact evaluation, defective sets.
//! * [`svalues`]: clopen values sets and group-like set algebra.
//! * [`classify`]: goodness, homeomorphism verdicts, back-and-forth
//!   certificates.
//! * [`construct`]: diagrams and abstract measures realizing prescribed data.
//! * [`oracle`]: brute-force ground truth at desk scale.

#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod construct;
pub mod diagram;
pub mod error;
pub mod exact;
pub mod measure;
pub mod oracle;
pub mod svalues;

pub use error::{Error, Result};

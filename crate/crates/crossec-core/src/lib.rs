//! Exact-arithmetic kernels for canonical 3x3 matrix-subspace cross-sections.
//!
//! Everything in this crate computes over the field of complex numbers with
//! rational coordinates, with no floating point anywhere: every rank,
//! determinant and subspace-equality decision is exact. The building blocks
//! are layered bottom-up:
//!
//! * [`scalar`] — the Gaussian-rational field.
//! * [`mat`] — small dense matrices: Schur product, row/column deletion,
//!   fraction-free rank and determinant.
//! * [`subspace`] — subspaces of m×n matrices with canonical reduced bases,
//!   membership, linear images and a randomized transitivity check.
//! * [`compress`] — index-set compressions of finite truncations and the
//!   executable forms of the two compression lemmas.
//! * [`general`] — blocks built from diagonal-difference data, the cross-ratio
//!   invariant, canonical five-dimensional sections with four parameters, the
//!   Schur-singularity certificate and the parameter recurrences that match
//!   adjacent sections.
//! * [`shift`] — diagonal-versus-Jordan-cell sections: the three canonical
//!   variants, the rank-rule certificate, adjacency matching and
//!   strongification.
//! * [`chain`] — synthesis of whole families of adjacent sections from seeds,
//!   and the audit that checks every rule and reports violations.
//!
//! All values are immutable and all operations are pure functions, so the
//! whole crate is safe for unrestricted concurrent use. Randomized checks take
//! explicit seeds and are deterministic.

#![no_std]

extern crate alloc;

pub mod chain;
pub mod compress;
pub mod general;
pub mod grid;
pub mod mat;
pub mod scalar;
pub mod shift;
pub mod subspace;

pub use chain::{AuditReport, Chain, CheckRecord, GeneralChain, GeneralSeeds, ShiftChain, ShiftSeeds};
pub use compress::Window;
pub use general::{GeneralParams, GeneralSequence, Variant};
pub use grid::{CoordVector, GridOutcome, GridWitness};
pub use mat::Mat;
pub use scalar::{Rational, Scalar};
pub use shift::{Delta, ShiftParams, ShiftSequence};
pub use subspace::{Subspace, TransitivityVerdict};

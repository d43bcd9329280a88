//! Exact-arithmetic workbench for deformation calculus on finite-dimensional
//! differential graded Lie algebras (DGLAs).
//!
//! Everything is computed over arbitrary-precision rationals, with no
//! floating point anywhere. Ideal-theoretic questions are answered degreewise
//! by linear algebra rather than Groebner bases, and every complement or
//! kernel basis is chosen by a deterministic pivot rule so results are
//! reproducible byte for byte.
//!
//! Module map:
//! - [`rational`], [`matrix`], [`poly`]: the exact linear-algebra and
//!   polynomial substrate.
//! - [`graded`]: graded bases and graded-commutative algebras (exterior
//!   algebras included).
//! - [`dgla`]: DGLAs, their axioms, cohomology, tensor/quotient/sum
//!   constructions, and the JSON interchange format.
//! - [`morphism`]: DGLA morphisms and the cohomological equivalence criterion
//!   (surjective on H0, bijective on H1, injective on H2).
//! - [`artin`], [`defo`]: truncated local base rings, Maurer-Cartan residuals,
//!   gauge transformations, Kuranishi maps, obstruction maps, and symbolic
//!   deformation equations.
//! - [`commvar`]: commuting-variety ideals, Hilbert functions, tangent
//!   dimensions, and the irreducibility bound report.
//! - [`cohom`]: closed-form cohomology of line bundles on torus x projective
//!   products, plus the contraction-map rank check.
//! - [`costability`]: the costability vanishing checker and the main
//!   hypothesis checker built on top of it.
//! - [`models`]: the product-model DGLAs and the end-to-end reports exposed by
//!   the CLI `check` subcommands.

// indexed loops and spelled-out inequalities mirror the written linear
// algebra; the iterator and `> n` forms read worse here
#![allow(clippy::needless_range_loop, clippy::int_plus_one)]

pub mod artin;
pub mod cohom;
pub mod commvar;
pub mod costability;
pub mod defo;
pub mod dgla;
pub mod graded;
pub mod matrix;
pub mod models;
pub mod morphism;
pub mod poly;
pub mod rational;

pub use rational::Rat;

use thiserror::Error;

/// Crate-wide error type. Hypothesis failures are report data, not errors;
/// this enum covers malformed inputs and precondition violations only.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid construction: {0}")]
    Invalid(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("ideal is not homogeneous: generator {index} mixes degrees")]
    NotHomogeneous { index: usize },
    #[error("not an ideal: [{element}, {ideal_vector}] falls outside the span")]
    NotAnIdeal { element: String, ideal_vector: String },
    #[error("not a morphism: {0}")]
    NotAMorphism(String),
    #[error("point is not on the variety: generator {index} evaluates to {value}")]
    NotOnVariety { index: usize, value: String },
    #[error("degree {requested} exceeds the cost guard {limit}")]
    DegreeGuard { requested: usize, limit: usize },
    #[error("divisor count {m} outside the window 1..={max}")]
    Window { m: usize, max: usize },
    #[error("criterion needs a zero differential, but d({element}) != 0")]
    NonzeroDifferential { element: String },
}

pub type Result<T> = std::result::Result<T, Error>;

//! Error type for group-theoretic computations.
//!
//! Every failure mode is explicit: an unsolvable quadric-symmetry system
//! (which signals an inconsistent normalization of the parameter-plane
//! action), a closure enumeration that exceeds its configured cap, and
//! arithmetic errors bubbled up from the exact linear algebra layer.

use algebra_core::AlgebraError;
use thiserror::Error;

/// Errors produced by group constructions and certifications.
#[derive(Debug, Error)]
pub enum GroupError {
    /// No 4x4 matrix expresses the transformed quadrics in terms of the
    /// original ones; the parameter-plane normalization of the element is
    /// inconsistent with its linear action.
    #[error("quadric symmetry system is unsolvable: {0}")]
    SymmetryUnsolvable(String),

    /// Breadth-first closure exceeded the configured element cap.
    #[error("group closure exceeded cap of {cap} elements")]
    ClosureCapExceeded {
        /// The configured maximum number of elements.
        cap: usize,
    },

    /// A matrix expected to be proportional to a coordinate row was not.
    #[error("linear form is not proportional to any coordinate row: {0}")]
    NotProportional(String),

    /// Exact linear-algebra failure (singular matrix, shape mismatch, ...).
    #[error("exact linear algebra error: {0}")]
    Algebra(#[from] AlgebraError),
}

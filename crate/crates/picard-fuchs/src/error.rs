//! Error type for operator construction and the local Frobenius solver.

use thiserror::Error;

/// Everything that can go wrong while building the operator pair in a
/// boundary chart or solving for the six local solutions.
#[derive(Debug, Error)]
pub enum PFError {
    /// A transformed operator coefficient refused to clear into a polynomial:
    /// after stripping the monomial part of its denominator, the remaining
    /// factor does not divide the numerator exactly.
    #[error("operator coefficient does not clear to a polynomial: {detail}")]
    NonPolynomialOperator {
        /// Human-readable description of the offending coefficient.
        detail: String,
    },

    /// The linear step of the recursion is contradictory.  The solution
    /// shapes are rigid, so this signals wrong chart data (bad coordinates,
    /// bad operator coefficients, or bad intersection numbers).
    #[error("inconsistent linear step while solving (signals wrong chart data): {detail}")]
    InconsistentStep {
        /// Which equation failed and how.
        detail: String,
    },

    /// The linear step of the recursion leaves coefficients undetermined, so
    /// the supplied operator pair does not cut out a six-dimensional local
    /// system on the requested window.
    #[error(
        "underdetermined linear step: {unsolved} series coefficients escape the \
         recursion on the ({t1}, {t2}) window"
    )]
    UnderdeterminedStep {
        /// Number of coefficients left undetermined.
        unsolved: usize,
        /// First window component.
        t1: u32,
        /// Second window component.
        t2: u32,
    },

    /// While solving for a log-bearing solution, the inhomogeneous term kept
    /// a nonzero part at a positive log level.  The canonical solution shape
    /// makes those parts cancel identically, so a survivor signals wrong
    /// chart data.
    #[error(
        "log level {level} fails to cancel at part ({a}, {b}) (signals wrong chart data)"
    )]
    LogCancellationFailure {
        /// Total log degree of the surviving part.
        level: u8,
        /// First log exponent of the surviving part.
        a: u8,
        /// Second log exponent of the surviving part.
        b: u8,
    },

    /// An exact operator identity that the chart construction relies on
    /// failed to verify, so the construction refuses to hand out tables that
    /// it cannot back up.
    #[error("operator equivalence certificate failed: {detail}")]
    CertificationFailed {
        /// Which certificate failed.
        detail: String,
    },

    /// The requested truncation window is below the supported minimum.
    #[error("truncation ({0}, {1}) is below the minimum (10, 3)")]
    TruncationTooSmall(u32, u32),

    /// The residue oracle's fixed-width counters overflowed (never expected
    /// within the supported degree range; a guard, not a code path).
    #[error("term-count arithmetic overflowed inside the residue oracle")]
    OracleOverflow,

    /// The residue oracle was asked for more total degree than its
    /// enumeration budget supports.
    #[error("residue oracle supports total degree up to {max}, got {requested}")]
    OracleDegreeTooLarge {
        /// Degree that was requested.
        requested: u32,
        /// Largest supported degree.
        max: u32,
    },

    /// Underlying series or matrix algebra failure.
    #[error(transparent)]
    Algebra(#[from] algebra_core::AlgebraError),

    /// Chart registry failure.
    #[error(transparent)]
    Chart(#[from] moduli_charts::ChartError),
}

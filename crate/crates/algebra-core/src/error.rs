//! Error type shared by the exact-arithmetic primitives.

use thiserror::Error;

/// Errors raised by series and matrix arithmetic.
///
/// These are *structural* errors (bad inputs, shape mismatches); they never
/// signal numerical problems, since all arithmetic in this crate is exact.
#[derive(Debug, Error)]
pub enum AlgebraError {
    /// Division requested by a series whose constant term is zero.
    #[error("division by a series with vanishing constant term")]
    DivisionByNonUnit,

    /// `log` requested of a series whose constant term is not 1.
    #[error("logarithm requires a series with constant term 1, found {0}")]
    LogRequiresUnit(String),

    /// `exp` requested of a series with a nonzero constant term.
    #[error("exponential requires a series with zero constant term, found {0}")]
    ExpRequiresZeroConstant(String),

    /// A compositional substitution whose arguments do not vanish at the
    /// origin (so the composite is not a well-defined power series).
    #[error("substitution argument for variable {var} must have zero constant term")]
    SubstitutionNotLocal { var: usize },

    /// A fixed-point series inversion failed to converge within the window,
    /// indicating arguments without the required leading-order structure.
    #[error("series inversion requires maps of the form q_i = z_i * unit, got valuation ({0}, {1})")]
    InversionShape(u32, u32),

    /// Serialization was requested for a series with an unbounded (exact
    /// polynomial) truncation window.
    #[error("cannot serialize a series with an unbounded truncation window")]
    UnboundedWindow,

    /// A canonical-form string failed to parse as a rational.
    #[error("cannot parse {0:?} as a rational number")]
    ParseRational(String),

    /// JSON input did not have the canonical series shape.
    #[error("malformed series JSON: {0}")]
    MalformedJson(String),

    /// A linear solve met an inconsistent system.
    #[error("linear system is inconsistent")]
    InconsistentSystem,

    /// A linear solve met an underdetermined system where a unique solution
    /// was required.
    #[error("linear system is underdetermined (rank {rank}, {unknowns} unknowns)")]
    Underdetermined { rank: usize, unknowns: usize },

    /// Matrix shapes incompatible with the requested operation.
    #[error("matrix shape mismatch: ({0}, {1}) vs ({2}, {3})")]
    ShapeMismatch(usize, usize, usize, usize),

    /// Inversion of a singular matrix or non-invertible field element.
    #[error("attempted to invert a singular matrix or zero element")]
    Singular,
}

//! Error type for chart lookups and coordinate-change operations.

use thiserror::Error;

/// Errors arising from the chart atlas.
#[derive(Debug, Error)]
pub enum ChartError {
    /// A chart name that is not one of `A`, `A'`, `A~`, `B`, `C`.
    #[error("unknown chart name: {0:?}")]
    UnknownChart(String),

    /// A discriminant label that does not exist on the given chart.
    #[error("chart {chart} has no discriminant labelled {label:?}")]
    UnknownLabel {
        /// Chart that was queried.
        chart: &'static str,
        /// Label that failed to resolve.
        label: String,
    },

    /// An exact pull-back produced a genuine rational function: the
    /// denominator shown does not reduce to a constant, so the result cannot
    /// be returned as a polynomial series.  Use the rational-function variant
    /// of the operation instead.
    #[error("pull-back is not polynomial; residual denominator {denominator}")]
    NonPolynomialPullback {
        /// Pretty-printed residual denominator.
        denominator: String,
    },

    /// A truncated series was asked to change charts along a transition that
    /// does not fix the expansion point, so the substitution would need
    /// coefficients beyond every finite truncation window.
    #[error(
        "transition maps the origin to a different point (component {component} \
         has constant term {value}); a truncated series cannot be re-expanded \
         across it — only exact polynomials can"
    )]
    NonLocalTransition {
        /// Which transition component fails to vanish at the origin (1 or 2).
        component: u8,
        /// The offending constant term.
        value: String,
    },

    /// A transition component has a denominator vanishing at the origin, so
    /// it admits no power-series expansion there at all.
    #[error("transition component {component} has a pole at the origin")]
    PoleAtOrigin {
        /// Which transition component is singular (1 or 2).
        component: u8,
    },

    /// An underlying exact-arithmetic error (window deficits, division by
    /// non-units, shape violations).
    #[error(transparent)]
    Algebra(#[from] algebra_core::AlgebraError),
}

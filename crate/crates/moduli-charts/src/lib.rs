//! Atlas of boundary charts for a two-parameter Calabi-Yau moduli space.
//!
//! The family under study is parametrized by base coordinates `(x, y)`; its
//! period lattice degenerates maximally at five boundary points, each with
//! its own preferred local coordinates.  This crate is the single source of
//! truth for everything chart-dependent that the rest of the workspace
//! consumes:
//!
//! - [`charts::ChartSpec`] — exact rational coordinate maps to and from the
//!   base, certified mutually inverse;
//! - per-chart discriminant factorizations ([`charts::Discriminant`]) with
//!   the rational exponents each factor contributes to the genus-one
//!   potential, plus the exponents of the coordinate lines themselves;
//! - normalization constants `N_P` ([`charts::RootTwo`]) and mirror-map
//!   constants `C₁`, `C₂`;
//! - topological intersection data ([`charts::TopologicalData`]) of the
//!   smooth Calabi-Yau threefold attached to each chart, from which the
//!   canonical logarithmic solution frame is later built;
//! - chart-change machinery ([`pull::pull_series`], [`pull::pull_rational`],
//!   [`pull::transition_jacobian`]) over the exact rational-function algebra
//!   of [`ratfunc`].
//!
//! All data is exact; the registry is immutable after construction and safe
//! for concurrent reads.  The JSON dump behind the `charts --list` command
//! lives in [`json::registry_json`].

pub mod charts;
pub mod error;
pub mod json;
pub mod pull;
pub mod ratfunc;

pub use charts::{all_charts, chart, ChartName, ChartSpec, Discriminant, RootTwo, TopologicalData};
pub use error::ChartError;
pub use json::registry_json;
pub use pull::{pull_rational, pull_series, transition, transition_jacobian};
pub use ratfunc::{poly_to_string, substitute_poly, substitute_rat, RatFunc, RatMap};

//! The Fuchsian system governing periods of the abelian-surface-fibered
//! Calabi-Yau threefolds, solved locally at every boundary chart.
//!
//! The family's periods satisfy a pair of partial differential operators in
//! the two-parameter base — one of degree 2 and one of degree 3 in the Euler
//! derivatives — whose joint kernel is six-dimensional.  This crate owns
//! everything about that pair:
//!
//! - [`PFOperator`] — an operator `Σ p_ij(x, y) θ_x^i θ_y^j` with exact
//!   polynomial coefficients, applied to series and log-solutions through
//!   the product rule ([`operator`]).
//! - [`build_operators`] — the pair in each boundary chart: the reference
//!   chart's coefficient tables, a verbatim renaming for the involution
//!   chart (verified against the operator-level reduction identities that
//!   make the renaming legitimate), and genuine coordinate transforms with
//!   certified denominator clearing for the remaining charts ([`build`]).
//! - [`solve_local`] / [`solve_frobenius`] — the Frobenius method at a
//!   point of maximal unipotent monodromy: the unique regular solution,
//!   two single-log, two double-log and one triple-log solution, with the
//!   log profile dictated by the mirror's intersection numbers and the
//!   regular tails pinned down by a zero-at-origin normalization
//!   ([`solve`]).
//! - [`PeriodBasis`] — the solved sextuple framed as an integral symplectic
//!   period vector via the topological lower-triangular matrix and the
//!   chart's normalization constant, with canonical JSON output
//!   ([`basis`]).
//! - [`omega0_residue_oracle`] — a second, operator-free route to the
//!   holomorphic period: counting torus-residue contributions of the four
//!   defining quadrics ([`oracle`]).  Agreement of the two routes is the
//!   strongest internal consistency check this workspace has for the
//!   operator tables.
//!
//! All arithmetic is exact.  Solving is deterministic: the recursion
//! consumes coefficients row by row in the second variable, and any
//! inconsistency or undetermined coefficient is reported as an error
//! naming the failing step, never patched over.

pub mod basis;
pub mod build;
pub mod error;
mod linsolve;
pub mod operator;
pub mod oracle;
pub mod solve;

pub use basis::{framing_matrix, PeriodBasis, SOLUTION_LABELS, TWO_PI_I_POWERS};
pub use build::{build_operators, frame_thetas, raw_transform, tables_plain};
pub use error::PFError;
pub use operator::{OperatorRat, PFOperator, StencilTerm};
pub use oracle::{omega0_residue_oracle, MAX_ORACLE_DEGREE};
pub use solve::{solve_frobenius, solve_local, MIN_TRUNCATION};

//! Changing charts: transitions, pull-backs of series, and Jacobians.
//!
//! For charts `P` and `Q`, the *transition* `φ_{P←Q}` expresses the
//! coordinates of `P` as rational functions of the coordinates of `Q`
//! (composing `P`'s inverse map with `Q`'s forward map through the base).
//! A function written in `P`-coordinates is pulled to `Q`-coordinates by
//! substituting the transition into it:
//!
//! - [`pull_rational`] performs the substitution exactly, always succeeding,
//!   with a rational function as the result;
//! - [`pull_series`] is the polynomial/series variant demanded by the
//!   downstream pipelines: exact polynomial inputs must produce polynomial
//!   outputs (a residual denominator is an error naming the deficit), while
//!   truncated-series inputs are re-expanded only if the transition fixes
//!   the origin — otherwise the finite window cannot determine the answer
//!   and an explicit error says so;
//! - [`transition_jacobian`] returns the exact Jacobian determinant
//!   `∂(P-coords)/∂(Q-coords)`.

use algebra_core::{BiSeries, Q, Substitution};

use crate::charts::{chart, ChartName};
use crate::error::ChartError;
use crate::ratfunc::{substitute_poly, RatFunc, RatMap};

/// The transition map expressing `from`-chart coordinates as rational
/// functions of `to`-chart coordinates.
pub fn transition(from: ChartName, to: ChartName) -> RatMap {
    chart(from).from_base.compose(&chart(to).to_base)
}

/// Jacobian determinant of [`transition`]`(from, to)`.
pub fn transition_jacobian(from: ChartName, to: ChartName) -> RatFunc {
    transition(from, to).jacobian()
}

/// Pull an exact polynomial on chart `from` back to chart `to`, allowing a
/// genuinely rational result.
pub fn pull_rational(from: ChartName, to: ChartName, s: &BiSeries<Q>) -> RatFunc {
    let t = transition(from, to);
    substitute_poly(s, &t.c1, &t.c2)
}

/// Pull a series on chart `from` back to chart `to`.
///
/// Exact polynomials go through the exact rational substitution and must
/// come out polynomial.  Truncated series require the transition to fix the
/// origin; the result window is tracked by the substitution engine.
pub fn pull_series(
    from: ChartName,
    to: ChartName,
    s: &BiSeries<Q>,
) -> Result<BiSeries<Q>, ChartError> {
    let t = transition(from, to);
    if s.is_exact() {
        let vars = chart(to).vars;
        return substitute_poly(s, &t.c1, &t.c2).into_polynomial(vars);
    }
    let window = s.trunc();
    let c1 = expand_local(&t.c1, window, 1)?;
    let c2 = expand_local(&t.c2, window, 2)?;
    let mut sub = Substitution::new(c1, c2, window)?;
    Ok(sub.apply(s)?)
}

/// Expand one transition component as a truncated power series at the
/// origin, requiring it to vanish there.
fn expand_local(
    f: &RatFunc,
    window: (u32, u32),
    component: u8,
) -> Result<BiSeries<Q>, ChartError> {
    use num::Zero;
    if f.den().coeff(0, 0).is_zero() {
        return Err(ChartError::PoleAtOrigin { component });
    }
    let num = f.num().truncate_to(window);
    let den = f.den().truncate_to(window);
    let series = num.mul(&den.inv_unit()?);
    let constant = series.coeff(0, 0);
    if !constant.is_zero() {
        return Err(ChartError::NonLocalTransition {
            component,
            value: constant.to_string(),
        });
    }
    Ok(series)
}

//! The local Frobenius solver: six log-solutions per boundary chart.
//!
//! Every chart origin is a point of maximal unipotent monodromy, and the
//! joint kernel of the operator pair has the canonical shape
//!
//! ```text
//! ω₀                                  — the unique regular solution, ω₀(0) = 1,
//! ω_k   = L_k ω₀ + u_k                — single logs, L_k = log x_k,
//! ω_{2,i} = Σ_{jk} d_{ijk} L_j L_k ω₀ + 2 Σ_{jk} d_{ijk} L_j u_k + v_i,
//! ω₃   = Σ d_{ijk} L_i L_j L_k ω₀ + 3 Σ d_{ijk} L_i L_j u_k + 3 Σ_i L_i v_i + w,
//! ```
//!
//! where `d_{ijk}` are the normalized triple intersection numbers of the
//! mirror and the regular tails `u_k, v_i, w` all vanish at the origin.
//! That normalization kills the freedom of adding lower solutions, so the
//! basis is unique and the solver is deterministic.
//!
//! The recursion works level by level: the log parts above the tail are
//! assembled from already-solved data, the operator is applied, every part
//! at positive log level must cancel identically (a survivor is reported as
//! wrong chart data), and the level-zero remainder becomes the inhomogeneous
//! term of a linear system for the tail — solved row by row in the second
//! variable, coefficient by coefficient in the first, with a sparse
//! elimination fallback for the coupled lowest rows.

use algebra_core::{qi, BiSeries, LogSolution, Q};
use moduli_charts::{chart, ChartName, TopologicalData};
use num::Zero;

use crate::basis::PeriodBasis;
use crate::build::build_operators;
use crate::error::PFError;
use crate::linsolve::{solve_constrained, SolveFailure, SparseEq};
use crate::operator::PFOperator;

/// Minimum supported truncation window.
pub const MIN_TRUNCATION: (u32, u32) = (10, 3);

/// Unknown numbering: row-major in the second variable, so ids follow the
/// recursion order (row `n`, then coefficient `m` within the row).
fn unknown_id(m: u32, n: u32, t: (u32, u32)) -> usize {
    (n as usize) * (t.0 as usize + 1) + m as usize
}

/// All equations `[𝒟 u]_{(M,N)} = rhs_{(M,N)}` whose unknowns lie entirely
/// inside the `(t.0, t.1)` window and whose right-hand side is known.
fn equations_for(op: &PFOperator, rhs: &BiSeries<Q>, t: (u32, u32)) -> Vec<SparseEq> {
    let stencil = op.stencil();
    let shift = op.max_shift();
    let rhs_window = rhs.trunc();
    let max_m = t.0.saturating_add(shift.0).min(rhs_window.0);
    let max_n = t.1.saturating_add(shift.1).min(rhs_window.1);
    let mut eqs = Vec::new();
    for big_m in 0..=max_m {
        for big_n in 0..=max_n {
            let mut terms: Vec<(usize, Q)> = Vec::new();
            let mut supported = true;
            for st in &stencil {
                if big_m < st.shift.0 || big_n < st.shift.1 {
                    continue;
                }
                let m = big_m - st.shift.0;
                let n = big_n - st.shift.1;
                if m > t.0 || n > t.1 {
                    supported = false;
                    break;
                }
                let weight = (m as i64).pow(st.theta.0 as u32)
                    * (n as i64).pow(st.theta.1 as u32);
                if weight == 0 {
                    continue;
                }
                terms.push((unknown_id(m, n, t), &st.coeff * qi(weight)));
            }
            if !supported {
                continue;
            }
            let r = rhs.coeff(big_m, big_n);
            if terms.is_empty() && r.is_zero() {
                continue;
            }
            eqs.push(SparseEq { terms, rhs: r });
        }
    }
    eqs
}

/// Solve `𝒟₂ u = rhs2`, `𝒟₃ u = rhs3` jointly for a plain series on the
/// window, with the constant term pinned.
fn solve_series(
    d2: &PFOperator,
    d3: &PFOperator,
    t: (u32, u32),
    rhs2: &BiSeries<Q>,
    rhs3: &BiSeries<Q>,
    constant: Q,
) -> Result<BiSeries<Q>, PFError> {
    let mut eqs = equations_for(d2, rhs2, t);
    eqs.extend(equations_for(d3, rhs3, t));
    let n = (t.0 as usize + 1) * (t.1 as usize + 1);
    let pinned = [(unknown_id(0, 0, t), constant)];
    let solution = solve_constrained(n, &eqs, &pinned).map_err(|f| match f {
        SolveFailure::Inconsistent { detail } => PFError::InconsistentStep { detail },
        SolveFailure::Underdetermined { unsolved } => PFError::UnderdeterminedStep {
            unsolved,
            t1: t.0,
            t2: t.1,
        },
    })?;
    let mut out = BiSeries::zero_window(t);
    for m in 0..=t.0 {
        for n_row in 0..=t.1 {
            let v = &solution[unknown_id(m, n_row, t)];
            if !v.is_zero() {
                out.set(m, n_row, v.clone());
            }
        }
    }
    Ok(out)
}

/// Given the known positive-log-level parts of a solution, check that the
/// operator pair kills every positive level identically and solve for the
/// level-zero tail (vanishing at the origin).
fn regular_tail(
    d2: &PFOperator,
    d3: &PFOperator,
    t: (u32, u32),
    known: &LogSolution,
) -> Result<BiSeries<Q>, PFError> {
    let mut rhs = Vec::with_capacity(2);
    for op in [d2, d3] {
        let image = op.apply(known);
        for (&(a, b), part) in image.iter() {
            if (a, b) != (0, 0) && !part.is_zero() {
                return Err(PFError::LogCancellationFailure { level: a + b, a, b });
            }
        }
        rhs.push(
            image
                .part(0, 0)
                .cloned()
                .unwrap_or_else(|| BiSeries::zero_window(t))
                .neg(),
        );
    }
    solve_series(d2, d3, t, &rhs[0], &rhs[1], Q::zero())
}

/// Solve the full six-dimensional local system for an explicit operator
/// pair and intersection data, in the canonical order
/// `(ω₀, ω₁, ω₂, ω_{2,2}, ω_{2,1}, ω₃)`.
pub fn solve_frobenius(
    d2: &PFOperator,
    d3: &PFOperator,
    topology: &TopologicalData,
    truncation: (u32, u32),
) -> Result<[LogSolution; 6], PFError> {
    if truncation.0 < MIN_TRUNCATION.0 || truncation.1 < MIN_TRUNCATION.1 {
        return Err(PFError::TruncationTooSmall(truncation.0, truncation.1));
    }
    let t = truncation;
    let zero = BiSeries::zero(); // exact zero: every coefficient is known
    let omega0 = solve_series(d2, d3, t, &zero, &zero, qi(1))?;

    // Single logs: ω_k = L_k ω₀ + u_k.
    let mut u = Vec::with_capacity(2);
    let mut omega_log1 = Vec::with_capacity(2);
    for k in 0..2u8 {
        let key = if k == 0 { (1, 0) } else { (0, 1) };
        let known = LogSolution::from_parts([(key, omega0.clone())])
            .expect("log degree one is allowed");
        let tail = regular_tail(d2, d3, t, &known)?;
        let mut sol = known;
        sol.set_part(0, 0, tail.clone())?;
        u.push(tail);
        omega_log1.push(sol);
    }

    // Double logs: ω_{2,i} with the intersection-number profile.
    let d = |i: u8, j: u8, k: u8| topology.d_normalized(i, j, k);
    let mut v = Vec::with_capacity(2);
    let mut omega_log2 = Vec::with_capacity(2);
    for i in 1..=2u8 {
        let mut known = LogSolution::new();
        known.set_part(2, 0, omega0.scale_q(&d(i, 1, 1)))?;
        known.set_part(1, 1, omega0.scale_q(&(d(i, 1, 2) * qi(2))))?;
        known.set_part(0, 2, omega0.scale_q(&d(i, 2, 2)))?;
        known.set_part(
            1,
            0,
            u[0].scale_q(&(d(i, 1, 1) * qi(2)))
                .add(&u[1].scale_q(&(d(i, 1, 2) * qi(2)))),
        )?;
        known.set_part(
            0,
            1,
            u[0].scale_q(&(d(i, 1, 2) * qi(2)))
                .add(&u[1].scale_q(&(d(i, 2, 2) * qi(2)))),
        )?;
        let tail = regular_tail(d2, d3, t, &known)?;
        let mut sol = known;
        sol.set_part(0, 0, tail.clone())?;
        v.push(tail);
        omega_log2.push(sol);
    }

    // Triple log: ω₃.
    let mut known = LogSolution::new();
    known.set_part(3, 0, omega0.scale_q(&d(1, 1, 1)))?;
    known.set_part(2, 1, omega0.scale_q(&(d(1, 1, 2) * qi(3))))?;
    known.set_part(1, 2, omega0.scale_q(&(d(1, 2, 2) * qi(3))))?;
    known.set_part(0, 3, omega0.scale_q(&d(2, 2, 2)))?;
    known.set_part(
        2,
        0,
        u[0].scale_q(&(d(1, 1, 1) * qi(3)))
            .add(&u[1].scale_q(&(d(1, 1, 2) * qi(3)))),
    )?;
    known.set_part(
        1,
        1,
        u[0].scale_q(&(d(1, 1, 2) * qi(6)))
            .add(&u[1].scale_q(&(d(1, 2, 2) * qi(6)))),
    )?;
    known.set_part(
        0,
        2,
        u[0].scale_q(&(d(1, 2, 2) * qi(3)))
            .add(&u[1].scale_q(&(d(2, 2, 2) * qi(3)))),
    )?;
    known.set_part(1, 0, v[0].scale_q(&qi(3)))?;
    known.set_part(0, 1, v[1].scale_q(&qi(3)))?;
    let tail = regular_tail(d2, d3, t, &known)?;
    let mut omega3 = known;
    omega3.set_part(0, 0, tail)?;

    let omega22 = omega_log2.pop().expect("two double logs");
    let omega21 = omega_log2.pop().expect("two double logs");
    let omega2 = omega_log1.pop().expect("two single logs");
    let omega1 = omega_log1.pop().expect("two single logs");
    Ok([
        LogSolution::from_series(omega0),
        omega1,
        omega2,
        omega22,
        omega21,
        omega3,
    ])
}

/// Solve the local system at a boundary chart and frame it as a period
/// basis.  `truncation` must be at least [`MIN_TRUNCATION`].
pub fn solve_local(name: ChartName, truncation: (u32, u32)) -> Result<PeriodBasis, PFError> {
    let (d2, d3) = build_operators(name);
    let spec = chart(name);
    let solutions = solve_frobenius(d2, d3, &spec.topology, truncation)?;
    Ok(PeriodBasis::assemble(name, truncation, solutions))
}

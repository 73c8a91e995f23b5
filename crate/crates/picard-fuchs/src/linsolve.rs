//! Sparse exact linear solving for the coefficientwise recursion.
//!
//! The recursion produces thousands of short equations over `Q`, one per
//! output coefficient of an operator applied to the unknown series.  Almost
//! all of them resolve by plain substitution (each equation pins the next
//! coefficient of a row), so the solver runs a propagation worklist first
//! and falls back to sparse Gaussian elimination only for the handful of
//! coupled chains (the two lowest rows determine each other jointly).
//! Every outcome is double-checked against the pristine input system.

use std::collections::{BTreeMap, VecDeque};

use algebra_core::Q;
use num::Zero;

/// One linear equation `Σ coeff·unknown = rhs` with exact coefficients.
#[derive(Debug, Clone)]
pub(crate) struct SparseEq {
    /// `(unknown id, coefficient)` pairs, each id at most once.
    pub terms: Vec<(usize, Q)>,
    /// Right-hand side.
    pub rhs: Q,
}

/// Failure modes of [`solve_constrained`].
#[derive(Debug)]
pub(crate) enum SolveFailure {
    /// An equation reduced to `0 = c` with `c ≠ 0`.
    Inconsistent {
        /// Description of the contradiction.
        detail: String,
    },
    /// Unknowns remained free after elimination.
    Underdetermined {
        /// How many unknowns escaped.
        unsolved: usize,
    },
}

#[derive(Debug, Clone)]
struct EqState {
    terms: BTreeMap<usize, Q>,
    rhs: Q,
    active: bool,
}

/// Solve for all `n` unknowns given the equations plus pinned values.
/// Returns the full solution vector or a failure; never panics on
/// mathematical grounds.
pub(crate) fn solve_constrained(
    n: usize,
    eqs: &[SparseEq],
    pinned: &[(usize, Q)],
) -> Result<Vec<Q>, SolveFailure> {
    let mut values: Vec<Option<Q>> = vec![None; n];
    let mut states: Vec<EqState> = Vec::with_capacity(eqs.len());
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (idx, eq) in eqs.iter().enumerate() {
        let mut terms = BTreeMap::new();
        for (u, c) in &eq.terms {
            if !c.is_zero() {
                let entry = terms.entry(*u).or_insert_with(Q::zero);
                *entry += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        for u in terms.keys() {
            occurs[*u].push(idx);
        }
        states.push(EqState {
            terms,
            rhs: eq.rhs.clone(),
            active: true,
        });
    }

    let mut queue: VecDeque<usize> = (0..states.len()).collect();
    let assign = |values: &mut Vec<Option<Q>>,
                      queue: &mut VecDeque<usize>,
                      occurs: &Vec<Vec<usize>>,
                      u: usize,
                      v: Q|
     -> Result<(), SolveFailure> {
        match &values[u] {
            Some(old) if *old != v => Err(SolveFailure::Inconsistent {
                detail: format!("unknown {u} pinned to two different values"),
            }),
            Some(_) => Ok(()),
            None => {
                values[u] = Some(v);
                for &e in &occurs[u] {
                    queue.push_back(e);
                }
                Ok(())
            }
        }
    };
    for (u, v) in pinned {
        assign(&mut values, &mut queue, &occurs, *u, v.clone())?;
    }

    // Propagation: substitute solved unknowns, fire singleton equations.
    let mut back_stack: Vec<(usize, EqState)> = Vec::new();
    loop {
        while let Some(idx) = queue.pop_front() {
            if !states[idx].active {
                continue;
            }
            let solved: Vec<usize> = states[idx]
                .terms
                .keys()
                .filter(|u| values[**u].is_some())
                .cloned()
                .collect();
            for u in solved {
                let c = states[idx].terms.remove(&u).expect("key just listed");
                let v = values[u].as_ref().expect("value known");
                states[idx].rhs -= c * v;
            }
            match states[idx].terms.len() {
                0 => {
                    if !states[idx].rhs.is_zero() {
                        return Err(SolveFailure::Inconsistent {
                            detail: format!(
                                "equation {idx} reduced to 0 = {}",
                                states[idx].rhs
                            ),
                        });
                    }
                    states[idx].active = false;
                }
                1 => {
                    let (u, c) = states[idx]
                        .terms
                        .iter()
                        .next()
                        .map(|(u, c)| (*u, c.clone()))
                        .expect("one term present");
                    let v = &states[idx].rhs / c;
                    states[idx].active = false;
                    assign(&mut values, &mut queue, &occurs, u, v)?;
                }
                _ => {}
            }
        }

        if values.iter().all(|v| v.is_some()) {
            break;
        }

        // Gaussian step: pick the unknown with the smallest id that occurs
        // in at least two active equations, pivot on the shortest of them,
        // and eliminate it everywhere else.
        let mut pivot: Option<(usize, usize)> = None; // (unknown, eq idx)
        'search: for u in 0..n {
            if values[u].is_some() {
                continue;
            }
            let holders: std::collections::BTreeSet<usize> = occurs[u]
                .iter()
                .filter(|&&e| states[e].active && states[e].terms.contains_key(&u))
                .cloned()
                .collect();
            if holders.len() >= 2 {
                let best = holders
                    .into_iter()
                    .min_by_key(|&e| states[e].terms.len())
                    .expect("nonempty");
                pivot = Some((u, best));
                break 'search;
            }
        }
        let Some((u, pidx)) = pivot else {
            // No elimination possible and propagation is stuck: unwind any
            // stashed pivots, then count what is left.
            break;
        };
        let pivot_eq = states[pidx].clone();
        states[pidx].active = false;
        let pc = pivot_eq.terms[&u].clone();
        let holders: std::collections::BTreeSet<usize> = occurs[u]
            .iter()
            .filter(|&&e| e != pidx && states[e].active && states[e].terms.contains_key(&u))
            .cloned()
            .collect();
        for e in holders {
            let Some(cu) = states[e].terms.get(&u) else {
                continue;
            };
            let factor = cu / &pc;
            for (w, c) in &pivot_eq.terms {
                let delta = c * &factor;
                let entry = states[e].terms.entry(*w).or_insert_with(Q::zero);
                *entry -= delta;
                if entry.is_zero() {
                    states[e].terms.remove(w);
                } else if *w != u {
                    occurs[*w].push(e);
                }
            }
            debug_assert!(!states[e].terms.contains_key(&u));
            states[e].rhs = &states[e].rhs - &pivot_eq.rhs * &factor;
            queue.push_back(e);
        }
        back_stack.push((u, pivot_eq));
    }

    // Unwind stashed pivots in reverse order.
    while let Some((u, eq)) = back_stack.pop() {
        if values[u].is_some() {
            continue;
        }
        let mut rhs = eq.rhs.clone();
        let mut coeff: Option<Q> = None;
        let mut blocked = false;
        for (w, c) in &eq.terms {
            if *w == u {
                coeff = Some(c.clone());
            } else {
                match &values[*w] {
                    Some(v) => rhs -= c * v,
                    None => {
                        blocked = true;
                        break;
                    }
                }
            }
        }
        if blocked {
            continue;
        }
        let c = coeff.expect("pivot contains its unknown");
        values[u] = Some(rhs / c);
    }

    let unsolved = values.iter().filter(|v| v.is_none()).count();
    if unsolved > 0 {
        return Err(SolveFailure::Underdetermined { unsolved });
    }
    let solution: Vec<Q> = values.into_iter().map(|v| v.expect("checked")).collect();

    // Paranoia: replay every original equation against the solution.
    for (idx, eq) in eqs.iter().enumerate() {
        let mut acc = Q::zero();
        for (u, c) in &eq.terms {
            acc += c * &solution[*u];
        }
        if acc != eq.rhs {
            return Err(SolveFailure::Inconsistent {
                detail: format!("equation {idx} violated on replay"),
            });
        }
    }
    for (u, v) in pinned {
        if &solution[*u] != v {
            return Err(SolveFailure::Inconsistent {
                detail: format!("pinned unknown {u} drifted"),
            });
        }
    }
    Ok(solution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use algebra_core::qq;

    fn eq(terms: &[(usize, i64)], rhs: i64) -> SparseEq {
        SparseEq {
            terms: terms.iter().map(|&(u, c)| (u, qq(c, 1))).collect(),
            rhs: qq(rhs, 1),
        }
    }

    #[test]
    fn chains_resolve_by_propagation() {
        // x0 = 1, x1 = 2 x0, x2 = x1 + x0.
        let eqs = vec![eq(&[(1, 1), (0, -2)], 0), eq(&[(2, 1), (1, -1), (0, -1)], 0)];
        let sol = solve_constrained(3, &eqs, &[(0, qq(1, 1))]).unwrap();
        assert_eq!(sol, vec![qq(1, 1), qq(2, 1), qq(3, 1)]);
    }

    #[test]
    fn coupled_pairs_need_the_gaussian_step() {
        // x0 + x1 = 3, x0 − x1 = 1 — no singleton anywhere.
        let eqs = vec![eq(&[(0, 1), (1, 1)], 3), eq(&[(0, 1), (1, -1)], 1)];
        let sol = solve_constrained(2, &eqs, &[]).unwrap();
        assert_eq!(sol, vec![qq(2, 1), qq(1, 1)]);
    }

    #[test]
    fn contradictions_are_reported() {
        let eqs = vec![eq(&[(0, 1)], 1), eq(&[(0, 1)], 2)];
        assert!(matches!(
            solve_constrained(1, &eqs, &[]),
            Err(SolveFailure::Inconsistent { .. })
        ));
    }

    #[test]
    fn free_unknowns_are_reported() {
        let eqs = vec![eq(&[(0, 1), (1, 1)], 1)];
        assert!(matches!(
            solve_constrained(2, &eqs, &[]),
            Err(SolveFailure::Underdetermined { unsolved: 2 })
        ));
    }

    #[test]
    fn redundant_equations_are_accepted() {
        let eqs = vec![
            eq(&[(0, 1), (1, 1)], 3),
            eq(&[(0, 2), (1, 2)], 6),
            eq(&[(0, 1), (1, -1)], 1),
        ];
        let sol = solve_constrained(2, &eqs, &[]).unwrap();
        assert_eq!(sol, vec![qq(2, 1), qq(1, 1)]);
    }
}

//! Differential operators in the two Euler derivatives `θ₁ = x₁ ∂/∂x₁`,
//! `θ₂ = x₂ ∂/∂x₂` of a boundary chart.
//!
//! Two representations are provided:
//!
//! - [`PFOperator`] — the finished form `Σ p_{ij}(x₁, x₂) θ₁^i θ₂^j` with
//!   exact *polynomial* coefficients.  This is what the solver consumes: it
//!   can be applied to plain series and to log-solutions, and it exposes its
//!   coefficient monomials as a [`StencilTerm`] list for the coefficientwise
//!   recursion.
//! - [`OperatorRat`] — the same shape with *rational-function* coefficients
//!   and a non-commutative product.  Changing coordinates moves `θ` through
//!   denominators, so the intermediate algebra lives here; a certified
//!   clearing step ([`OperatorRat::clear_denominators`]) returns to
//!   [`PFOperator`] once the dust settles.
//!
//! The only non-commutativity ever needed is the derivation rule
//! `θ ∘ c = c ∘ θ + (θc)`, iterated binomially for higher powers; both
//! representations keep coefficients written on the left of the `θ`'s.

use std::collections::BTreeMap;

use algebra_core::{BiSeries, LogSolution, Q};
use moduli_charts::{poly_to_string, RatFunc};
use num::{One, Signed, Zero};

use crate::error::PFError;

/// One coefficient monomial of an operator, ready for the recursion: the
/// term `coeff · x₁^{shift.0} x₂^{shift.1} θ₁^{theta.0} θ₂^{theta.1}`.
///
/// Applied to a series, it sends the coefficient at `(m, n)` to the output
/// slot `(m + shift.0, n + shift.1)` scaled by `coeff · m^{theta.0} n^{theta.1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StencilTerm {
    /// Monomial bidegree of the coefficient.
    pub shift: (u32, u32),
    /// Powers of `θ₁` and `θ₂`.
    pub theta: (u8, u8),
    /// Rational coefficient of the monomial.
    pub coeff: Q,
}

/// A differential operator `Σ p_{ij}(x₁, x₂) θ₁^i θ₂^j` with exact
/// polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PFOperator {
    terms: BTreeMap<(u8, u8), BiSeries<Q>>,
}

impl PFOperator {
    /// Build from `(i, j) → p_{ij}` pairs.  Zero coefficients are dropped.
    ///
    /// # Panics
    /// Panics if a coefficient carries a finite truncation window; operator
    /// coefficients are exact polynomials by construction.
    pub fn new(terms: impl IntoIterator<Item = ((u8, u8), BiSeries<Q>)>) -> Self {
        let mut map = BTreeMap::new();
        for (key, p) in terms {
            assert!(p.is_exact(), "operator coefficients must be exact polynomials");
            if !p.is_zero() {
                map.insert(key, p);
            }
        }
        PFOperator { terms: map }
    }

    /// The coefficient of `θ₁^i θ₂^j` (zero when absent).
    pub fn coefficient(&self, i: u8, j: u8) -> BiSeries<Q> {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BiSeries::zero)
    }

    /// Iterate nonzero coefficients in `(i, j)` order.
    pub fn iter(&self) -> impl Iterator<Item = (&(u8, u8), &BiSeries<Q>)> {
        self.terms.iter()
    }

    /// Total order: the largest `i + j` carrying a nonzero coefficient.
    pub fn order(&self) -> u8 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    /// Apply to a plain power series (respecting its window).
    pub fn apply_series(&self, f: &BiSeries<Q>) -> BiSeries<Q> {
        self.apply(&LogSolution::from_series(f.clone()))
            .part(0, 0)
            .cloned()
            .unwrap_or_else(|| BiSeries::zero_window(f.trunc()))
    }

    /// Apply to a log-solution by the product rule; the result's windows are
    /// tracked exactly, so every stored coefficient of the output is valid.
    pub fn apply(&self, s: &LogSolution) -> LogSolution {
        let order = self.order() as usize;
        // grid[i][j] = θ₁^i θ₂^j s, filled row by row.
        let mut grid: Vec<Vec<LogSolution>> = Vec::with_capacity(order + 1);
        for i in 0..=order {
            let mut row: Vec<LogSolution> = Vec::with_capacity(order + 1 - i);
            for j in 0..=(order - i) {
                let entry = if i == 0 && j == 0 {
                    s.clone()
                } else if j == 0 {
                    grid[i - 1][0].theta1()
                } else {
                    row[j - 1].theta2()
                };
                row.push(entry);
            }
            grid.push(row);
        }
        let mut acc = LogSolution::new();
        for (&(i, j), p) in &self.terms {
            acc = acc.add(&grid[i as usize][j as usize].mul_series(p));
        }
        acc
    }

    /// Flatten into stencil terms, one per coefficient monomial.
    pub fn stencil(&self) -> Vec<StencilTerm> {
        let mut out = Vec::new();
        for (&(i, j), p) in &self.terms {
            for (&(a, b), c) in p.iter() {
                if !c.is_zero() {
                    out.push(StencilTerm {
                        shift: (a, b),
                        theta: (i, j),
                        coeff: c.clone(),
                    });
                }
            }
        }
        out
    }

    /// Largest coefficient-monomial bidegree, componentwise — how far the
    /// operator can push an input coefficient outward.
    pub fn max_shift(&self) -> (u32, u32) {
        let mut s = (0, 0);
        for p in self.terms.values() {
            for (&(a, b), c) in p.iter() {
                if !c.is_zero() {
                    s.0 = s.0.max(a);
                    s.1 = s.1.max(b);
                }
            }
        }
        s
    }

    /// Rescale to the primitive integer form: all coefficients integral with
    /// overall content `1`, and the lexicographically first monomial of the
    /// lowest `(i, j)` coefficient positive.  Annihilated functions are
    /// unchanged; printed forms become canonical.
    pub fn normalize_primitive(&self) -> Self {
        use num::bigint::BigInt;
        use num::Integer;
        let mut denom_lcm = BigInt::one();
        let mut numer_gcd = BigInt::zero();
        for p in self.terms.values() {
            for (_, c) in p.iter() {
                if c.is_zero() {
                    continue;
                }
                denom_lcm = denom_lcm.lcm(c.denom());
                numer_gcd = numer_gcd.gcd(c.numer());
            }
        }
        if numer_gcd.is_zero() {
            return self.clone();
        }
        let mut scale = Q::new(denom_lcm, numer_gcd);
        if let Some((_, p)) = self.terms.iter().next() {
            for (_, c) in p.iter() {
                if !c.is_zero() {
                    if (c * &scale).is_negative() {
                        scale = -scale;
                    }
                    break;
                }
            }
        }
        PFOperator {
            terms: self
                .terms
                .iter()
                .map(|(k, p)| (*k, p.scale(&scale)))
                .collect(),
        }
    }

    /// Render as a sum of `[p_{ij}] θ₁^i θ₂^j` blocks with the given
    /// variable names (for logs and JSON, not for parsing).
    pub fn render(&self, vars: (&str, &str)) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut blocks = Vec::new();
        for (&(i, j), p) in &self.terms {
            let mut block = format!("[{}]", poly_to_string(p, vars));
            for (sym, e) in [("θ1", i), ("θ2", j)] {
                match e {
                    0 => {}
                    1 => block.push_str(&format!("·{sym}")),
                    _ => block.push_str(&format!("·{sym}^{e}")),
                }
            }
            blocks.push(block);
        }
        blocks.join(" + ")
    }
}

/// Binomial coefficient for the tiny range needed by the derivation rule.
fn binom(n: u8, k: u8) -> i64 {
    let (n, k) = (n as i64, k as i64);
    let mut acc = 1i64;
    for t in 0..k {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

/// Euler derivative of a rational function: `θ₁ f` for `which = 1`,
/// `θ₂ f` for `which = 2`.
fn theta_rat(f: &RatFunc, which: u8) -> RatFunc {
    match which {
        1 => RatFunc::var1().mul(&f.d1()),
        2 => RatFunc::var2().mul(&f.d2()),
        _ => unreachable!("only two variables"),
    }
}

/// A differential operator with rational-function coefficients and a normal
/// ordering (functions left, `θ`'s right).  This is the working form during
/// coordinate changes; the non-commutative product is [`OperatorRat::compose`].
#[derive(Debug, Clone)]
pub struct OperatorRat {
    terms: BTreeMap<(u8, u8), RatFunc>,
}

impl OperatorRat {
    /// The zero operator.
    pub fn zero() -> Self {
        OperatorRat {
            terms: BTreeMap::new(),
        }
    }

    /// The identity operator (multiplication by `1`).
    pub fn identity() -> Self {
        Self::theta(0, 0)
    }

    /// The bare monomial `θ₁^i θ₂^j`.
    pub fn theta(i: u8, j: u8) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((i, j), RatFunc::from_terms(&[(0, 0, 1, 1)]));
        OperatorRat { terms }
    }

    /// View a polynomial-coefficient operator as a rational one.
    pub fn from_pf(op: &PFOperator) -> Self {
        OperatorRat {
            terms: op
                .iter()
                .map(|(k, p)| (*k, RatFunc::from_poly(p.clone())))
                .collect(),
        }
    }

    /// The coefficient of `θ₁^i θ₂^j` (zero when absent).
    pub fn coefficient(&self, i: u8, j: u8) -> RatFunc {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| RatFunc::from_poly(BiSeries::zero()))
    }

    /// Iterate nonzero coefficients in `(i, j)` order.
    pub fn iter(&self) -> impl Iterator<Item = (&(u8, u8), &RatFunc)> {
        self.terms.iter()
    }

    /// Total order: the largest `i + j` carrying a nonzero coefficient.
    pub fn order(&self) -> u8 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    fn insert_add(&mut self, key: (u8, u8), f: RatFunc) {
        if f.is_zero() {
            return;
        }
        let next = match self.terms.get(&key) {
            Some(g) => g.add(&f),
            None => f,
        };
        if next.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, next);
        }
    }

    /// Sum of operators.
    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (key, f) in &rhs.terms {
            out.insert_add(*key, f.clone());
        }
        out
    }

    /// Difference of operators.
    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale_left(&RatFunc::constant_q(-1, 1)))
    }

    /// Multiply every coefficient by a function on the left (the function
    /// does not pass through any `θ`, so this is plain scaling).
    pub fn scale_left(&self, f: &RatFunc) -> Self {
        if f.is_zero() {
            return Self::zero();
        }
        OperatorRat {
            terms: self
                .terms
                .iter()
                .map(|(k, g)| (*k, f.mul(g)))
                .collect(),
        }
    }

    /// Non-commutative product `self ∘ rhs`: apply `rhs` first.  Dragging
    /// `θ₁^i θ₂^j` through a coefficient `c` costs
    /// `Σ binom(i,a) binom(j,b) (θ₁^a θ₂^b c) θ₁^{i−a} θ₂^{j−b}`.
    pub fn compose(&self, rhs: &Self) -> Self {
        let max_i = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let max_j = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let mut out = Self::zero();
        for (&(i2, j2), c2) in &rhs.terms {
            // Derivative grid of the right coefficient up to the left orders.
            let mut dgrid: Vec<Vec<RatFunc>> = Vec::with_capacity(max_i as usize + 1);
            for a in 0..=max_i as usize {
                let mut row = Vec::with_capacity(max_j as usize + 1);
                for b in 0..=max_j as usize {
                    let entry = if a == 0 && b == 0 {
                        c2.clone()
                    } else if b == 0 {
                        theta_rat(&dgrid[a - 1][0], 1)
                    } else {
                        theta_rat(&row[b - 1], 2)
                    };
                    row.push(entry);
                }
                dgrid.push(row);
            }
            for (&(i1, j1), c1) in &self.terms {
                for a in 0..=i1 {
                    for b in 0..=j1 {
                        let w = binom(i1, a) * binom(j1, b);
                        let deriv = &dgrid[a as usize][b as usize];
                        if deriv.is_zero() {
                            continue;
                        }
                        let coeff = c1
                            .mul(deriv)
                            .mul(&RatFunc::constant_q(w, 1));
                        out.insert_add((i1 - a + i2, j1 - b + j2), coeff);
                    }
                }
            }
        }
        out
    }

    /// Mathematical equality, coefficient by coefficient (cross-multiplied,
    /// so representatives do not matter).
    pub fn eq_exact(&self, rhs: &Self) -> bool {
        let keys: std::collections::BTreeSet<(u8, u8)> = self
            .terms
            .keys()
            .chain(rhs.terms.keys())
            .cloned()
            .collect();
        keys.iter()
            .all(|&(i, j)| self.coefficient(i, j).eq_exact(&rhs.coefficient(i, j)))
    }

    /// Clear denominators into a polynomial-coefficient operator.
    ///
    /// Each coefficient `n/d` is handled in two steps: the monomial content
    /// of `d` is postponed, and the remaining unit factor must divide `n`
    /// exactly — the quotient is found by series division and certified by
    /// multiplying back.  The operator is then scaled on the left by the
    /// least common monomial of the postponed parts (which preserves the
    /// annihilated functions away from the coordinate axes) and brought to
    /// primitive integer form.
    pub fn clear_denominators(&self, vars: (&str, &str)) -> Result<PFOperator, PFError> {
        struct Cleared {
            key: (u8, u8),
            poly: BiSeries<Q>,
            monomial: (u32, u32),
        }
        let mut cleared: Vec<Cleared> = Vec::new();
        for (&key, c) in &self.terms {
            if c.is_zero() {
                continue;
            }
            let num = c.num().clone();
            let den = c.den().clone();
            let (ma, mb) = den.valuation();
            let dhat = den
                .shift_down(ma, mb)
                .expect("valuation divides the denominator");
            let poly = if dhat.term_count() == 1 && dhat.coeff(0, 0).is_one() {
                num
            } else {
                if dhat.coeff(0, 0).is_zero() {
                    return Err(PFError::NonPolynomialOperator {
                        detail: format!(
                            "coefficient of θ1^{} θ2^{} keeps the non-unit denominator {}",
                            key.0,
                            key.1,
                            poly_to_string(&dhat, vars)
                        ),
                    });
                }
                let bound = poly_degrees(&num);
                let q = num.with_window(bound).div(&dhat)?;
                let q_exact = q.with_window((BiSeries::<Q>::UNBOUNDED, BiSeries::<Q>::UNBOUNDED));
                if !q_exact.mul(&dhat).sub(&num).is_zero() {
                    return Err(PFError::NonPolynomialOperator {
                        detail: format!(
                            "denominator {} of the θ1^{} θ2^{} coefficient does not divide \
                             its numerator",
                            poly_to_string(&dhat, vars),
                            key.0,
                            key.1
                        ),
                    });
                }
                q_exact
            };
            cleared.push(Cleared {
                key,
                poly,
                monomial: (ma, mb),
            });
        }
        let lcm = cleared.iter().fold((0, 0), |acc, c| {
            (acc.0.max(c.monomial.0), acc.1.max(c.monomial.1))
        });
        let op = PFOperator::new(cleared.into_iter().map(|c| {
            let shifted = c
                .poly
                .shift(lcm.0 - c.monomial.0, lcm.1 - c.monomial.1);
            (c.key, shifted)
        }));
        Ok(op.normalize_primitive())
    }
}

/// Componentwise maximal degrees of an exact polynomial.
fn poly_degrees(p: &BiSeries<Q>) -> (u32, u32) {
    let mut d = (0, 0);
    for (&(i, j), c) in p.iter() {
        if !c.is_zero() {
            d.0 = d.0.max(i);
            d.1 = d.1.max(j);
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use algebra_core::qq;

    fn x() -> RatFunc {
        RatFunc::var1()
    }

    #[test]
    fn derivation_rule_through_one_coefficient() {
        // θ1 ∘ x = x ∘ θ1 + x  (since θ1 x = x).
        let left = OperatorRat::theta(1, 0).compose(&OperatorRat::identity().scale_left(&x()));
        assert!(left.coefficient(1, 0).eq_exact(&x()));
        assert!(left.coefficient(0, 0).eq_exact(&x()));
    }

    #[test]
    fn second_power_picks_up_the_binomial() {
        // θ1² ∘ x = x θ1² + 2x θ1 + x.
        let left = OperatorRat::theta(2, 0).compose(&OperatorRat::identity().scale_left(&x()));
        assert!(left.coefficient(2, 0).eq_exact(&x()));
        assert!(left.coefficient(1, 0).eq_exact(&x().mul(&RatFunc::constant_q(2, 1))));
        assert!(left.coefficient(0, 0).eq_exact(&x()));
    }

    #[test]
    fn composition_is_associative() {
        let a = OperatorRat::theta(1, 1).scale_left(&x());
        let b = OperatorRat::theta(0, 1).scale_left(&RatFunc::var2());
        let c = OperatorRat::theta(1, 0).scale_left(&x().add(&RatFunc::constant_q(1, 1)));
        let left = a.compose(&b).compose(&c);
        let right = a.compose(&b.compose(&c));
        assert!(left.eq_exact(&right));
    }

    #[test]
    fn stencil_lists_every_monomial() {
        let p = BiSeries::poly_q(&[(1, 0, 2, 1), (0, 1, -3, 1)]);
        let op = PFOperator::new([((1, 0), p)]);
        let st = op.stencil();
        assert_eq!(st.len(), 2);
        assert_eq!(st[0].shift, (0, 1));
        assert_eq!(st[0].coeff, qq(-3, 1));
        assert_eq!(st[1].shift, (1, 0));
        assert_eq!(st[1].theta, (1, 0));
    }

    #[test]
    fn primitive_form_strips_content() {
        let op = PFOperator::new([
            ((0, 0), BiSeries::poly_q(&[(1, 0, -4, 6)])),
            ((1, 0), BiSeries::poly_q(&[(0, 1, -8, 3)])),
        ]);
        let prim = op.normalize_primitive();
        assert_eq!(prim.coefficient(0, 0).coeff(1, 0), qq(1, 1));
        assert_eq!(prim.coefficient(1, 0).coeff(0, 1), qq(4, 1));
    }
}

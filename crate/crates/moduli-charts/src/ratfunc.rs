//! Exact bivariate rational functions and rational maps.
//!
//! The coordinate changes between boundary charts are rational maps of the
//! plane, e.g. `(x, y) ↦ ((1−4x)/8, 128y/(1−4x)⁴)`.  This module represents
//! such maps exactly as pairs of [`RatFunc`] — quotients of exact polynomial
//! [`BiSeries`] — and supplies the algebra the atlas needs:
//!
//! - field operations, powers and partial derivatives (quotient rule);
//! - substitution of a rational point into a polynomial, and full composition
//!   of rational maps, both exact;
//! - Jacobian determinants of maps;
//! - equality by cross-multiplication, so no polynomial gcd is ever required;
//! - a deterministic light normalization (cancel common monomial factors,
//!   scale the denominator's lexicographically smallest term to `1`) that
//!   keeps printed forms readable.
//!
//! Polynomials are kept in the sparse exact representation of
//! [`BiSeries`]; everything here is over `Q` and exact.

use algebra_core::{BiSeries, Q};
use num::{One, Signed, Zero};

use crate::error::ChartError;

/// Render an exact polynomial with the given variable names, smallest
/// exponents first, in the style `1 - 4*z1 + 16*z1^4*z2`.
pub fn poly_to_string(p: &BiSeries<Q>, vars: (&str, &str)) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (&(i, j), c) in p.iter() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || (i == 0 && j == 0) {
            if abs.is_integer() {
                factors.push(abs.numer().to_string());
            } else {
                factors.push(format!("{}/{}", abs.numer(), abs.denom()));
            }
        }
        for (var, e) in [(vars.0, i), (vars.1, j)] {
            match e {
                0 => {}
                1 => factors.push(var.to_string()),
                _ => factors.push(format!("{var}^{e}")),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

/// The largest monomial `x^a y^b` dividing every term of `p` (for `p ≠ 0`).
fn common_monomial(p: &BiSeries<Q>) -> (u32, u32) {
    let mut a = u32::MAX;
    let mut b = u32::MAX;
    for (&(i, j), c) in p.iter() {
        if !c.is_zero() {
            a = a.min(i);
            b = b.min(j);
        }
    }
    if a == u32::MAX {
        (0, 0)
    } else {
        (a, b)
    }
}

/// The coefficient of the lexicographically smallest term of `p` (`p ≠ 0`).
fn lex_leading(p: &BiSeries<Q>) -> Q {
    for (_, c) in p.iter() {
        if !c.is_zero() {
            return c.clone();
        }
    }
    Q::zero()
}

/// An exact rational function `num/den` in two variables.
///
/// Both parts are exact polynomials (unbounded truncation window); the
/// denominator is never the zero polynomial.  No gcd reduction is performed
/// beyond cancelling a common monomial factor and a scalar, so two equal
/// values may have different representatives — use [`RatFunc::eq_exact`] (or
/// `==`, which forwards to it) for mathematical equality.
#[derive(Debug, Clone)]
pub struct RatFunc {
    num: BiSeries<Q>,
    den: BiSeries<Q>,
}

impl RatFunc {
    /// Build `num/den` from exact polynomials, normalizing the representative.
    ///
    /// # Panics
    /// Panics if `den` is zero or either argument carries a finite truncation
    /// window (rational-function arithmetic is only meaningful on exact data).
    pub fn new(num: BiSeries<Q>, den: BiSeries<Q>) -> Self {
        assert!(num.is_exact() && den.is_exact(), "RatFunc parts must be exact");
        assert!(!den.is_zero(), "RatFunc denominator must be nonzero");
        let mut f = RatFunc { num, den };
        f.normalize();
        f
    }

    /// The polynomial `p` viewed as `p/1`.
    pub fn from_poly(p: BiSeries<Q>) -> Self {
        Self::new(p, BiSeries::one())
    }

    /// Convenience: an exact polynomial from `(i, j, numer, denom)` terms.
    pub fn from_terms(terms: &[(u32, u32, i64, i64)]) -> Self {
        Self::from_poly(BiSeries::poly_q(terms))
    }

    /// The constant `n/d`.
    pub fn constant_q(n: i64, d: i64) -> Self {
        Self::from_terms(&[(0, 0, n, d)])
    }

    /// The first coordinate function.
    pub fn var1() -> Self {
        Self::from_terms(&[(1, 0, 1, 1)])
    }

    /// The second coordinate function.
    pub fn var2() -> Self {
        Self::from_terms(&[(0, 1, 1, 1)])
    }

    /// Numerator of the stored representative.
    pub fn num(&self) -> &BiSeries<Q> {
        &self.num
    }

    /// Denominator of the stored representative.
    pub fn den(&self) -> &BiSeries<Q> {
        &self.den
    }

    /// Cancel common monomial factors and scale so the denominator's
    /// lexicographically smallest coefficient is `1`.
    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = BiSeries::one();
            return;
        }
        let (na, nb) = common_monomial(&self.num);
        let (da, db) = common_monomial(&self.den);
        let (ca, cb) = (na.min(da), nb.min(db));
        if (ca, cb) != (0, 0) {
            self.num = self
                .num
                .shift_down(ca, cb)
                .expect("common monomial divides numerator");
            self.den = self
                .den
                .shift_down(ca, cb)
                .expect("common monomial divides denominator");
        }
        let lead = lex_leading(&self.den);
        if !lead.is_one() {
            let inv = Q::one() / lead;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    /// True if the value is a polynomial in the stored representative, i.e.
    /// the denominator has reduced to the constant `1`.
    pub fn is_polynomial(&self) -> bool {
        self.den.term_count() == 1 && self.den.coeff(0, 0).is_one()
    }

    /// Extract the polynomial value, or report the residual denominator.
    pub fn into_polynomial(self, vars: (&str, &str)) -> Result<BiSeries<Q>, ChartError> {
        if self.is_polynomial() {
            Ok(self.num)
        } else {
            Err(ChartError::NonPolynomialPullback {
                denominator: poly_to_string(&self.den, vars),
            })
        }
    }

    /// True exactly when the value is zero.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Mathematical equality by cross-multiplication.
    pub fn eq_exact(&self, rhs: &Self) -> bool {
        self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)).is_zero()
    }

    /// Sum.
    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    /// Difference.
    pub fn sub(&self, rhs: &Self) -> Self {
        Self::new(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    /// Product.
    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    /// Quotient.
    ///
    /// # Panics
    /// Panics if `rhs` is zero.
    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division of rational functions by zero");
        Self::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    /// Integer power (negative exponents invert; `0` gives `1`).
    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return Self::from_poly(BiSeries::one());
        }
        let k = e.unsigned_abs() as u32;
        let powed = RatFunc {
            num: self.num.pow(k),
            den: self.den.pow(k),
        };
        if e > 0 {
            powed
        } else {
            assert!(!powed.is_zero(), "negative power of zero");
            Self::new(powed.den, powed.num)
        }
    }

    /// Partial derivative in the first variable (quotient rule).
    pub fn d1(&self) -> Self {
        Self::new(
            self.num.dx().mul(&self.den).sub(&self.num.mul(&self.den.dx())),
            self.den.mul(&self.den),
        )
    }

    /// Partial derivative in the second variable (quotient rule).
    pub fn d2(&self) -> Self {
        Self::new(
            self.num.dy().mul(&self.den).sub(&self.num.mul(&self.den.dy())),
            self.den.mul(&self.den),
        )
    }

    /// Value at a point with both coordinates rational, if the denominator
    /// does not vanish there.
    pub fn eval(&self, p: (&Q, &Q)) -> Option<Q> {
        let eval_poly = |poly: &BiSeries<Q>| -> Q {
            let mut acc = Q::zero();
            for (&(i, j), c) in poly.iter() {
                let mut term = c.clone();
                for _ in 0..i {
                    term *= p.0;
                }
                for _ in 0..j {
                    term *= p.1;
                }
                acc += term;
            }
            acc
        };
        let d = eval_poly(&self.den);
        if d.is_zero() {
            None
        } else {
            Some(eval_poly(&self.num) / d)
        }
    }

    /// Render with the given variable names, as `num / (den)` or just the
    /// numerator when the value is a polynomial.
    pub fn render(&self, vars: (&str, &str)) -> String {
        if self.is_polynomial() {
            poly_to_string(&self.num, vars)
        } else {
            format!(
                "({}) / ({})",
                poly_to_string(&self.num, vars),
                poly_to_string(&self.den, vars)
            )
        }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.eq_exact(other)
    }
}

impl Eq for RatFunc {}

/// Substitute rational functions for the two variables of an exact
/// polynomial: `p(f, g)` as a rational function, computed exactly.
pub fn substitute_poly(p: &BiSeries<Q>, f: &RatFunc, g: &RatFunc) -> RatFunc {
    assert!(p.is_exact(), "substitution target must be an exact polynomial");
    // Cache powers of f and g up to the degrees that occur.
    let (mut max_i, mut max_j) = (0u32, 0u32);
    for (&(i, j), c) in p.iter() {
        if !c.is_zero() {
            max_i = max_i.max(i);
            max_j = max_j.max(j);
        }
    }
    let mut fpow: Vec<RatFunc> = Vec::with_capacity(max_i as usize + 1);
    let mut gpow: Vec<RatFunc> = Vec::with_capacity(max_j as usize + 1);
    fpow.push(RatFunc::from_poly(BiSeries::one()));
    gpow.push(RatFunc::from_poly(BiSeries::one()));
    for i in 1..=max_i {
        let prev = &fpow[(i - 1) as usize];
        fpow.push(prev.mul(f));
    }
    for j in 1..=max_j {
        let prev = &gpow[(j - 1) as usize];
        gpow.push(prev.mul(g));
    }
    let mut acc = RatFunc::from_poly(BiSeries::zero());
    for (&(i, j), c) in p.iter() {
        if c.is_zero() {
            continue;
        }
        let term = fpow[i as usize].mul(&gpow[j as usize]);
        let scaled = RatFunc {
            num: term.num.scale(c),
            den: term.den,
        };
        acc = acc.add(&scaled);
    }
    acc
}

/// Substitute rational functions into a rational function: `r(f, g)`.
pub fn substitute_rat(r: &RatFunc, f: &RatFunc, g: &RatFunc) -> RatFunc {
    let n = substitute_poly(r.num(), f, g);
    let d = substitute_poly(r.den(), f, g);
    n.div(&d)
}

/// A rational map of the plane: a pair of rational coordinate functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMap {
    /// First component.
    pub c1: RatFunc,
    /// Second component.
    pub c2: RatFunc,
}

impl RatMap {
    /// Build from two components.
    pub fn new(c1: RatFunc, c2: RatFunc) -> Self {
        RatMap { c1, c2 }
    }

    /// The identity map `(u, v) ↦ (u, v)`.
    pub fn identity() -> Self {
        RatMap::new(RatFunc::var1(), RatFunc::var2())
    }

    /// Composition `self ∘ other`: first apply `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        RatMap::new(
            substitute_rat(&self.c1, &other.c1, &other.c2),
            substitute_rat(&self.c2, &other.c1, &other.c2),
        )
    }

    /// True if this is the identity map.
    pub fn is_identity(&self) -> bool {
        self.c1.eq_exact(&RatFunc::var1()) && self.c2.eq_exact(&RatFunc::var2())
    }

    /// Jacobian determinant `∂(c1, c2)/∂(u, v)` as a rational function.
    pub fn jacobian(&self) -> RatFunc {
        self.c1
            .d1()
            .mul(&self.c2.d2())
            .sub(&self.c1.d2().mul(&self.c2.d1()))
    }
}

//! Polynomials in two formal logarithms with bivariate series coefficients.
//!
//! Frobenius bases at points of maximal unipotent monodromy have the shape
//! `sum_{a+b <= 3} L1^a L2^b f_ab(x, y)` where `L1, L2` stand for the
//! logarithms of the two chart coordinates and the `f_ab` are power series.
//! [`LogSolution`] stores the `f_ab` keyed by `(a, b)` and implements the
//! derivation rule
//!
//! ```text
//! theta1 L1 = 1,   theta2 L2 = 1,   theta1 L2 = theta2 L1 = 0,
//! ```
//!
//! so that differential operators in `theta1, theta2` act on whole solutions
//! by the product rule.  The total log degree never exceeds 3 (the weight
//! filtration length of a threefold), which is enforced at construction.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::AlgebraError;
use crate::series::BiSeries;
use crate::Q;

/// Maximum total degree in the formal logarithms.
pub const MAX_LOG_DEGREE: u8 = 3;

/// A log-polynomial `sum L1^a L2^b f_ab` with `a + b <= 3`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LogSolution {
    parts: BTreeMap<(u8, u8), BiSeries<Q>>,
}

impl LogSolution {
    /// The zero solution.
    pub fn new() -> Self {
        LogSolution {
            parts: BTreeMap::new(),
        }
    }

    /// Build from explicit `(a, b) -> series` parts.
    pub fn from_parts(
        parts: impl IntoIterator<Item = ((u8, u8), BiSeries<Q>)>,
    ) -> Result<Self, AlgebraError> {
        let mut s = Self::new();
        for ((a, b), f) in parts {
            s.set_part(a, b, f)?;
        }
        Ok(s)
    }

    /// A pure power-series solution (log degree zero).
    pub fn from_series(f: BiSeries<Q>) -> Self {
        let mut s = Self::new();
        if !f.is_zero() {
            s.parts.insert((0, 0), f);
        }
        s
    }

    /// The coefficient series of `L1^a L2^b`, if nonzero.
    pub fn part(&self, a: u8, b: u8) -> Option<&BiSeries<Q>> {
        self.parts.get(&(a, b))
    }

    /// The coefficient series of `L1^a L2^b`, or a zero series with the
    /// given window.
    pub fn part_or_zero(&self, a: u8, b: u8, window: (u32, u32)) -> BiSeries<Q> {
        self.parts
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(|| BiSeries::zero_window(window))
    }

    /// Insert or replace the coefficient of `L1^a L2^b`.
    pub fn set_part(&mut self, a: u8, b: u8, f: BiSeries<Q>) -> Result<(), AlgebraError> {
        if a + b > MAX_LOG_DEGREE {
            return Err(AlgebraError::MalformedJson(format!(
                "log degree {}+{} exceeds the maximum {}",
                a, b, MAX_LOG_DEGREE
            )));
        }
        if f.is_zero() {
            self.parts.remove(&(a, b));
        } else {
            self.parts.insert((a, b), f);
        }
        Ok(())
    }

    /// Iterate nonzero parts in lexicographic `(a, b)` order.
    pub fn iter(&self) -> impl Iterator<Item = (&(u8, u8), &BiSeries<Q>)> {
        self.parts.iter()
    }

    /// True if every part vanishes.
    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest total log degree with a nonzero coefficient (0 for a pure
    /// series or the zero solution).
    pub fn log_degree(&self) -> u8 {
        self.parts.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    /// Sum of solutions.
    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), f) in &rhs.parts {
            let next = match out.parts.get(&(*a, *b)) {
                Some(g) => g.add(f),
                None => f.clone(),
            };
            if next.is_zero() {
                out.parts.remove(&(*a, *b));
            } else {
                out.parts.insert((*a, *b), next);
            }
        }
        out
    }

    /// Difference of solutions.
    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-crate::qi(1)))
    }

    /// Multiply every part by a rational constant.
    pub fn scale(&self, c: &Q) -> Self {
        if num::Zero::is_zero(c) {
            return Self::new();
        }
        LogSolution {
            parts: self
                .parts
                .iter()
                .map(|(k, f)| (*k, f.scale_q(c)))
                .collect(),
        }
    }

    /// Multiply every part by a series (log degree unchanged).
    pub fn mul_series(&self, g: &BiSeries<Q>) -> Self {
        let mut out = Self::new();
        for ((a, b), f) in &self.parts {
            let p = f.mul(g);
            if !p.is_zero() {
                out.parts.insert((*a, *b), p);
            }
        }
        out
    }

    /// The Euler derivative `theta1 = x d/dx` with `theta1 L1 = 1`:
    /// `theta1(L1^a L2^b f) = a L1^(a-1) L2^b f + L1^a L2^b theta1(f)`.
    pub fn theta1(&self) -> Self {
        let mut out = Self::new();
        for ((a, b), f) in &self.parts {
            out.accumulate(*a, *b, f.theta1());
            if *a > 0 {
                out.accumulate(a - 1, *b, f.scale_q(&crate::qi(*a as i64)));
            }
        }
        out
    }

    /// The Euler derivative `theta2 = y d/dy` with `theta2 L2 = 1`.
    pub fn theta2(&self) -> Self {
        let mut out = Self::new();
        for ((a, b), f) in &self.parts {
            out.accumulate(*a, *b, f.theta2());
            if *b > 0 {
                out.accumulate(*a, b - 1, f.scale_q(&crate::qi(*b as i64)));
            }
        }
        out
    }

    fn accumulate(&mut self, a: u8, b: u8, f: BiSeries<Q>) {
        if f.is_zero() {
            return;
        }
        let next = match self.parts.get(&(a, b)) {
            Some(g) => g.add(&f),
            None => f,
        };
        if next.is_zero() {
            self.parts.remove(&(a, b));
        } else {
            self.parts.insert((a, b), next);
        }
    }

    /// Truncate every part to the given window.
    pub fn truncate_to(&self, w: (u32, u32)) -> Self {
        LogSolution {
            parts: self
                .parts
                .iter()
                .map(|(k, f)| (*k, f.truncate_to(w)))
                .filter(|(_, f)| !f.is_zero())
                .collect(),
        }
    }
}

impl fmt::Display for LogSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), s) in &self.parts {
            if !first {
                writeln!(f)?;
            }
            write!(f, "L1^{a} L2^{b} * [{s}]")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qi;

    fn one_w() -> BiSeries<Q> {
        BiSeries::one().with_window((4, 4))
    }

    #[test]
    fn derivation_rule_on_pure_logs() {
        // theta1(L1) = 1, theta2(L1) = 0.
        let l1 = LogSolution::from_parts([((1, 0), one_w())]).unwrap();
        let d1 = l1.theta1();
        assert_eq!(d1.part(0, 0).unwrap().coeff(0, 0), qi(1));
        assert_eq!(d1.log_degree(), 0);
        assert!(l1.theta2().is_zero());
    }

    #[test]
    fn derivation_rule_on_squares() {
        // theta1(L1^2) = 2 L1.
        let l1sq = LogSolution::from_parts([((2, 0), one_w())]).unwrap();
        let d = l1sq.theta1();
        assert_eq!(d.part(1, 0).unwrap().coeff(0, 0), qi(2));
        assert!(d.part(2, 0).is_none());
    }

    #[test]
    fn leibniz_with_series_coefficient() {
        // theta1(L1 * x) = x + L1 * x.
        let x = BiSeries::monomial(qi(1), 1, 0).with_window((4, 4));
        let s = LogSolution::from_parts([((1, 0), x.clone())]).unwrap();
        let d = s.theta1();
        assert_eq!(d.part(0, 0).unwrap().coeff(1, 0), qi(1));
        assert_eq!(d.part(1, 0).unwrap().coeff(1, 0), qi(1));
    }

    #[test]
    fn mixed_log_cross_derivatives_commute() {
        // theta1 theta2 = theta2 theta1 on L1^2 L2 * (1 + x y).
        let f = BiSeries::poly_q(&[(0, 0, 1, 1), (1, 1, 1, 1)]).with_window((4, 4));
        let s = LogSolution::from_parts([((2, 1), f)]).unwrap();
        assert_eq!(s.theta1().theta2(), s.theta2().theta1());
    }

    #[test]
    fn degree_cap_enforced() {
        let err = LogSolution::from_parts([((2, 2), one_w())]);
        assert!(err.is_err());
    }
}

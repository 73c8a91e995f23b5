//! The cyclotomic field `Q(zeta_16)`, realized as `Q[z]/(z^8 + 1)`.
//!
//! A primitive 16th root of unity `z` generates a degree-8 extension of `Q`;
//! elements are stored as the coefficient vector of `1, z, ..., z^7`.  The
//! subfields actually exercised downstream are generated by
//!
//! - `xi = z^2` (a primitive 8th root, the character value of the Heisenberg
//!   generators),
//! - `i = z^4`, and
//! - `sqrt(2) = z^2 - z^6` (since `(z^2 - z^6)^2 = z^4 - 2 z^8 + z^12 =
//!   i + 2 - i = 2`),
//!
//! which is exactly what the finite matrix groups and the `1/sqrt(2)`-laden
//! connection matrices need.  All arithmetic is exact.

use std::fmt;

use crate::error::AlgebraError;
use crate::scalar::Scalar;
use crate::{fmt_q, Q};

/// An element of `Q(zeta_16)`: coefficients of `z^0 .. z^7` with `z^8 = -1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyc16 {
    /// Coefficient of `z^k` at index `k`.
    pub c: [Q; 8],
}

// `Q` implements both `num::Zero` and our `Scalar`, so plain method calls on
// rationals would be ambiguous in this module; route them through these
// helpers instead.
fn q0() -> Q {
    num::Zero::zero()
}
fn q1() -> Q {
    num::One::one()
}
fn qz(q: &Q) -> bool {
    num::Zero::is_zero(q)
}
fn zeros() -> [Q; 8] {
    std::array::from_fn(|_| q0())
}

impl Cyc16 {
    /// The zero element.
    pub fn new_zero() -> Self {
        Cyc16 { c: zeros() }
    }

    /// The monomial `q * z^k` for any integer power `k` (reduced mod 16,
    /// with `z^8 = -1`).
    pub fn monomial(q: Q, k: i64) -> Self {
        let mut c = zeros();
        let k = k.rem_euclid(16) as usize;
        if k < 8 {
            c[k] = q;
        } else {
            c[k - 8] = -q;
        }
        Cyc16 { c }
    }

    /// The generator `z = zeta_16`.
    pub fn zeta() -> Self {
        Self::monomial(q1(), 1)
    }

    /// The primitive 8th root of unity `xi = z^2`.
    pub fn xi() -> Self {
        Self::monomial(q1(), 2)
    }

    /// `xi^k` for any integer `k`.
    pub fn xi_pow(k: i64) -> Self {
        Self::monomial(q1(), 2 * k.rem_euclid(8))
    }

    /// `sqrt(2) = z^2 - z^6`.
    pub fn sqrt2() -> Self {
        let mut c = zeros();
        c[2] = q1();
        c[6] = -q1();
        Cyc16 { c }
    }

    /// The imaginary unit `i = z^4`.
    pub fn i() -> Self {
        Self::monomial(q1(), 4)
    }

    /// The element `a + b * sqrt(2)` of the real quadratic subfield.
    pub fn from_sqrt2_pair(a: Q, b: Q) -> Self {
        let mut c = zeros();
        c[0] = a;
        c[2] = b.clone();
        c[6] = -b;
        Cyc16 { c }
    }

    /// If the element lies in `Q(sqrt 2)`, return `(a, b)` with
    /// `self = a + b * sqrt(2)`.
    pub fn as_sqrt2_pair(&self) -> Option<(Q, Q)> {
        let ok = qz(&self.c[1])
            && qz(&self.c[3])
            && qz(&self.c[4])
            && qz(&self.c[5])
            && qz(&self.c[7])
            && self.c[2] == -self.c[6].clone();
        if ok {
            Some((self.c[0].clone(), self.c[2].clone()))
        } else {
            None
        }
    }

    /// Evaluate the element as a complex number `(re, im)` in `f64`,
    /// using `z = exp(i pi / 8)`.  Intended for diagnostics and for seeding
    /// numeric cross-checks, not for exact logic.
    pub fn to_f64_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, q) in self.c.iter().enumerate() {
            if qz(q) {
                continue;
            }
            let v = q_to_f64(q);
            let ang = std::f64::consts::PI * (k as f64) / 8.0;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

fn q_to_f64(q: &Q) -> f64 {
    // Good enough for diagnostics: parse numerator and denominator separately.
    let n: f64 = q.numer().to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = q.denom().to_string().parse().unwrap_or(f64::NAN);
    n / d
}

impl fmt::Display for Cyc16 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, q) in self.c.iter().enumerate() {
            if qz(q) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", fmt_q(q))?;
            } else {
                write!(f, "{}*z^{}", fmt_q(q), k)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Scalar for Cyc16 {
    fn zero() -> Self {
        Self::new_zero()
    }

    fn one() -> Self {
        Self::monomial(q1(), 0)
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(qz)
    }

    fn add(&self, rhs: &Self) -> Self {
        let c = std::array::from_fn(|k| &self.c[k] + &rhs.c[k]);
        Cyc16 { c }
    }

    fn sub(&self, rhs: &Self) -> Self {
        let c = std::array::from_fn(|k| &self.c[k] - &rhs.c[k]);
        Cyc16 { c }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut c = zeros();
        for (a, qa) in self.c.iter().enumerate() {
            if qz(qa) {
                continue;
            }
            for (b, qb) in rhs.c.iter().enumerate() {
                if qz(qb) {
                    continue;
                }
                let prod = qa * qb;
                let k = a + b;
                if k < 8 {
                    c[k] = &c[k] + &prod;
                } else {
                    // z^8 = -1 folds the top half back with a sign.
                    c[k - 8] = &c[k - 8] - &prod;
                }
            }
        }
        Cyc16 { c }
    }

    fn neg(&self) -> Self {
        let c = std::array::from_fn(|k| -self.c[k].clone());
        Cyc16 { c }
    }

    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        // Solve (self * w) = 1 as an 8x8 rational linear system in the
        // coefficients of w: column j of the matrix is self * z^j.
        let mut cols: Vec<[Q; 8]> = Vec::with_capacity(8);
        for j in 0..8i64 {
            let m = Self::monomial(q1(), j);
            cols.push(Scalar::mul(self, &m).c);
        }
        let mut aug: Vec<Vec<Q>> = (0..8)
            .map(|r| {
                let mut row: Vec<Q> = (0..8).map(|j| cols[j][r].clone()).collect();
                row.push(if r == 0 { q1() } else { q0() });
                row
            })
            .collect();
        // Exact Gauss-Jordan; the matrix is invertible because the field has
        // no zero divisors.
        for col in 0..8 {
            let piv = (col..8).find(|&r| !qz(&aug[r][col]))?;
            aug.swap(col, piv);
            let p = aug[col][col].clone();
            for x in aug[col].iter_mut() {
                *x = &*x / &p;
            }
            for r in 0..8 {
                if r != col && !qz(&aug[r][col]) {
                    let f = aug[r][col].clone();
                    for cidx in col..9 {
                        let sub = &f * &aug[col][cidx];
                        aug[r][cidx] = &aug[r][cidx] - &sub;
                    }
                }
            }
        }
        let c = std::array::from_fn(|k| aug[k][8].clone());
        Some(Cyc16 { c })
    }

    fn from_q(q: &Q) -> Self {
        Self::monomial(q.clone(), 0)
    }

    fn as_q(&self) -> Option<Q> {
        if self.c[1..].iter().all(qz) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    fn canonical(&self) -> String {
        let parts: Vec<String> = self.c.iter().map(fmt_q).collect();
        parts.join("|")
    }
}

/// Parse the canonical `|`-joined coefficient form produced by
/// [`Scalar::canonical`].
pub fn parse_cyc16(s: &str) -> Result<Cyc16, AlgebraError> {
    let parts: Vec<&str> = s.split('|').collect();
    if parts.len() != 8 {
        return Err(AlgebraError::ParseRational(s.to_string()));
    }
    let mut c = zeros();
    for (k, p) in parts.iter().enumerate() {
        c[k] = crate::parse_q(p)?;
    }
    Ok(Cyc16 { c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{qi, qq};

    #[test]
    fn zeta_has_order_sixteen() {
        let z = Cyc16::zeta();
        let mut p = Cyc16::one();
        for k in 1..=16 {
            p = p.mul(&z);
            if k < 16 {
                assert_ne!(p, Cyc16::one(), "z^{k} should not be 1");
            }
        }
        assert_eq!(p, Cyc16::one());
        // z^8 = -1.
        let mut e = Cyc16::one();
        for _ in 0..8 {
            e = e.mul(&z);
        }
        assert_eq!(e, Cyc16::one().neg());
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let s = Cyc16::sqrt2();
        assert_eq!(s.mul(&s), Cyc16::from_q(&qi(2)));
    }

    #[test]
    fn i_squares_to_minus_one() {
        let i = Cyc16::i();
        assert_eq!(i.mul(&i), Cyc16::from_q(&qi(-1)));
    }

    #[test]
    fn inverse_round_trip() {
        // A dense element exercising all basis coefficients.
        let mut e = Cyc16::new_zero();
        for k in 0..8 {
            e.c[k] = qq(k as i64 + 1, 3);
        }
        let inv = e.inv().unwrap();
        assert_eq!(e.mul(&inv), Cyc16::one());
    }

    #[test]
    fn sqrt2_pair_round_trip() {
        let e = Cyc16::from_sqrt2_pair(qq(-3, 2), qq(5, 4));
        let (a, b) = e.as_sqrt2_pair().unwrap();
        assert_eq!(a, qq(-3, 2));
        assert_eq!(b, qq(5, 4));
        assert!(Cyc16::zeta().as_sqrt2_pair().is_none());
    }

    #[test]
    fn canonical_round_trip() {
        let e = Cyc16::from_sqrt2_pair(qi(2), qq(-1, 2));
        let s = e.canonical();
        assert_eq!(parse_cyc16(&s).unwrap(), e);
    }

    #[test]
    fn numeric_embedding_consistent() {
        let (re, im) = Cyc16::sqrt2().to_f64_complex();
        assert!((re - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(im.abs() < 1e-12);
    }
}

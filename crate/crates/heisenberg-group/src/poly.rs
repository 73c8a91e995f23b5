//! Sparse multivariate polynomials in `w0, w1, w2, x0..x7` over the 16th
//! cyclotomic field.
//!
//! The defining quadrics of the family are bilinear in the plane variables
//! `w` and quadratic in the projective coordinates `x`; all symmetry
//! certifications reduce to identities between such polynomials.  Degrees
//! stay tiny (at most 12 for the invariant-theory checks), so a plain
//! `BTreeMap` keyed by exponent vectors is both exact and fast.
//!
//! Supported operations:
//!
//! - ring arithmetic (`add`, `sub`, `mul`, `pow`, `scale`);
//! - simultaneous linear substitution of every variable via [`PolyW::substitute`],
//!   used to apply a group element to the quadrics;
//! - [`PolyW::proportionality`], deciding whether two polynomials agree up to
//!   one exact scalar and returning that scalar — the right notion of
//!   equality for ideal generators.

use std::collections::BTreeMap;
use std::fmt;

use algebra_core::{qi, Cyc16, Scalar};

/// Number of variables: `w0, w1, w2` followed by `x0..x7`.
pub const NVARS: usize = 11;

/// A sparse polynomial in `w0, w1, w2, x0..x7` with coefficients in the
/// 16th cyclotomic field.  Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PolyW {
    terms: BTreeMap<[u8; NVARS], Cyc16>,
}

impl PolyW {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: Cyc16) -> Self {
        let mut p = Self::zero();
        p.add_term([0; NVARS], c);
        p
    }

    /// The variable with flat index `v` (`0..3` are `w0..w2`, `3..11` are
    /// `x0..x7`).  Panics if `v >= 11`; variable indices are compile-time
    /// constants at every call site.
    pub fn var(v: usize) -> Self {
        assert!(v < NVARS, "variable index {v} out of range");
        let mut e = [0u8; NVARS];
        e[v] = 1;
        let mut p = Self::zero();
        p.add_term(e, Cyc16::from_q(&qi(1)));
        p
    }

    /// The plane variable `w_i` for `i < 3`.
    pub fn w(i: usize) -> Self {
        assert!(i < 3, "plane variable index {i} out of range");
        Self::var(i)
    }

    /// The projective coordinate `x_i` for `i < 8`.
    pub fn x(i: usize) -> Self {
        assert!(i < 8, "coordinate index {i} out of range");
        Self::var(3 + i)
    }

    /// A single term `c * prod(var_v ^ e_v)`.
    pub fn term(c: Cyc16, exps: [u8; NVARS]) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c);
        p
    }

    /// Linear form `sum_k coeffs[k] * x_k` in the projective coordinates.
    pub fn linear_x(coeffs: &[Cyc16; 8]) -> Self {
        let mut p = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = [0u8; NVARS];
            e[3 + k] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Iterator over `(exponents, coefficient)` pairs in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&[u8; NVARS], &Cyc16)> {
        self.terms.iter()
    }

    /// The coefficient of the given exponent vector (zero if absent).
    pub fn coeff(&self, exps: &[u8; NVARS]) -> Cyc16 {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(Cyc16::new_zero)
    }

    fn add_term(&mut self, exps: [u8; NVARS], c: Cyc16) {
        if Scalar::is_zero(&c) {
            return;
        }
        let entry = self
            .terms
            .entry(exps)
            .or_insert_with(Cyc16::new_zero)
            .add(&c);
        if Scalar::is_zero(&entry) {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, entry);
        }
    }

    /// Sum of two polynomials.
    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, c.clone());
        }
        out
    }

    /// Difference of two polynomials.
    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms.iter() {
            out.terms.insert(*e, c.neg());
        }
        out
    }

    /// Multiplication by an exact scalar.
    pub fn scale(&self, s: &Cyc16) -> Self {
        if Scalar::is_zero(s) {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (e, c) in self.terms.iter() {
            out.add_term(*e, c.mul(s));
        }
        out
    }

    /// Product of two polynomials.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in rhs.terms.iter() {
                let mut e = [0u8; NVARS];
                for v in 0..NVARS {
                    e[v] = ea[v]
                        .checked_add(eb[v])
                        .expect("exponent overflow in polynomial product");
                }
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    /// `self` raised to a small power.
    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant(Cyc16::from_q(&qi(1)));
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Simultaneous substitution: replaces variable `v` by `subs[v]` for all
    /// eleven variables at once.
    pub fn substitute(&self, subs: &[PolyW; NVARS]) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms.iter() {
            let mut prod = Self::constant(c.clone());
            for v in 0..NVARS {
                for _ in 0..e[v] {
                    prod = prod.mul(&subs[v]);
                }
            }
            out = out.add(&prod);
        }
        out
    }

    /// The identity substitution, convenient as a base to override entries of.
    pub fn identity_subs() -> [PolyW; NVARS] {
        std::array::from_fn(Self::var)
    }

    /// If `other == lambda * self` for a single exact scalar `lambda`,
    /// returns `Some(lambda)`; otherwise `None`.  Two zero polynomials are
    /// proportional with `lambda = 1`.
    pub fn proportionality(&self, other: &Self) -> Option<Cyc16> {
        if self.is_zero() {
            return if other.is_zero() {
                Some(Cyc16::from_q(&qi(1)))
            } else {
                None
            };
        }
        if other.is_zero() {
            return None;
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let (e0, c0) = self.terms.iter().next().expect("nonzero polynomial");
        let d0 = other.terms.get(e0)?;
        let lambda = d0.mul(&c0.inv()?);
        for (e, c) in self.terms.iter() {
            let d = other.terms.get(e)?;
            if d != &c.mul(&lambda) {
                return None;
            }
        }
        Some(lambda)
    }
}

impl fmt::Display for PolyW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        const NAMES: [&str; NVARS] = [
            "w0", "w1", "w2", "x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7",
        ];
        let mut first = true;
        for (e, c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for v in 0..NVARS {
                match e[v] {
                    0 => {}
                    1 => write!(f, "*{}", NAMES[v])?,
                    k => write!(f, "*{}^{}", NAMES[v], k)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use algebra_core::qq;

    #[test]
    fn ring_identities() {
        let a = PolyW::w(0).add(&PolyW::x(3));
        let b = PolyW::w(0).sub(&PolyW::x(3));
        let prod = a.mul(&b);
        let expect = PolyW::w(0).pow(2).sub(&PolyW::x(3).pow(2));
        assert_eq!(prod, expect);
    }

    #[test]
    fn substitution_is_linear() {
        // Swap w0 <-> w2 in w0^2 - w2^2 and get the negative back.
        let p = PolyW::w(0).pow(2).sub(&PolyW::w(2).pow(2));
        let mut subs = PolyW::identity_subs();
        subs[0] = PolyW::w(2);
        subs[2] = PolyW::w(0);
        assert_eq!(p.substitute(&subs), p.neg());
    }

    #[test]
    fn proportional_detects_scalar() {
        let p = PolyW::x(0).mul(&PolyW::x(4)).add(&PolyW::x(2).pow(2));
        let q = p.scale(&Cyc16::from_q(&qq(3, 2)));
        assert_eq!(p.proportionality(&q), Some(Cyc16::from_q(&qq(3, 2))));
        let r = q.add(&PolyW::x(1));
        assert_eq!(p.proportionality(&r), None);
    }
}

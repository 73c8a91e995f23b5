//! The coefficient-field abstraction and its rational/Gaussian instances.
//!
//! Series and matrix code in this workspace is generic over [`Scalar`], an
//! exact field with an embedding of the rationals.  Three fields are used in
//! practice:
//!
//! - [`crate::Q`] for almost everything,
//! - [`GaussQ`] = `Q(i)` for the one mirror map whose constant is `sqrt(-1)`,
//! - [`crate::Cyc16`] = `Q(zeta_16)` for the Heisenberg-group matrices and for
//!   exact connection matrices with entries in `Q(sqrt 2)`.

use std::fmt;

use num::{One, Zero};

use crate::{fmt_q, Q};

/// An exact field with a distinguished embedding of the rationals.
///
/// Methods take references so implementations with heap-allocated digits
/// (all of ours) avoid needless clones.  `div` and `inv` return `None` for a
/// zero divisor rather than panicking, so callers can surface a structured
/// error.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    /// Additive identity.
    fn zero() -> Self;
    /// Multiplicative identity.
    fn one() -> Self;
    /// Test against the additive identity.
    fn is_zero(&self) -> bool;
    /// `self + rhs`.
    fn add(&self, rhs: &Self) -> Self;
    /// `self - rhs`.
    fn sub(&self, rhs: &Self) -> Self;
    /// `self * rhs`.
    fn mul(&self, rhs: &Self) -> Self;
    /// `-self`.
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` if `self` is zero.
    fn inv(&self) -> Option<Self>;
    /// Embed a rational into the field.
    fn from_q(q: &Q) -> Self;

    /// `self / rhs`, `None` if `rhs` is zero.
    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    /// Extract a rational if the element lies in the prime field.
    fn as_q(&self) -> Option<Q>;

    /// Canonical string form, used for JSON output and content hashing.
    ///
    /// Rationals render as `num/den`; extension-field elements use their
    /// implementation-specific canonical form.
    fn canonical(&self) -> String;

    /// Embed a machine integer.
    fn from_i64(n: i64) -> Self {
        Self::from_q(&Q::from(num::BigInt::from(n)))
    }
}

impl Scalar for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
    fn as_q(&self) -> Option<Q> {
        Some(self.clone())
    }
    fn canonical(&self) -> String {
        fmt_q(self)
    }
}

/// A Gaussian rational `re + im * i`, the field `Q(i)`.
///
/// Used by the mirror map of the chart whose leading constant is `sqrt(-1)`;
/// everything else in that pipeline stays rational, so the type is deliberately
/// minimal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussQ {
    /// Real part.
    pub re: Q,
    /// Imaginary part (coefficient of `i`).
    pub im: Q,
}

impl GaussQ {
    /// Build from real and imaginary parts.
    pub fn new(re: Q, im: Q) -> Self {
        GaussQ { re, im }
    }

    /// The imaginary unit `i`.
    pub fn i() -> Self {
        GaussQ {
            re: Scalar::zero(),
            im: Scalar::one(),
        }
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        GaussQ {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// Squared absolute value `re^2 + im^2`.
    pub fn norm_sq(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for GaussQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.im) {
            write!(f, "{}", fmt_q(&self.re))
        } else if Zero::is_zero(&self.re) {
            write!(f, "{}*i", fmt_q(&self.im))
        } else {
            write!(f, "{}+{}*i", fmt_q(&self.re), fmt_q(&self.im))
        }
    }
}

impl Scalar for GaussQ {
    fn zero() -> Self {
        GaussQ {
            re: Scalar::zero(),
            im: Scalar::zero(),
        }
    }
    fn one() -> Self {
        GaussQ {
            re: Scalar::one(),
            im: Scalar::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add(&self, rhs: &Self) -> Self {
        GaussQ {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        GaussQ {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        GaussQ {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
    fn neg(&self) -> Self {
        GaussQ {
            re: -&self.re,
            im: -&self.im,
        }
    }
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        let n = self.norm_sq();
        Some(GaussQ {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }
    fn from_q(q: &Q) -> Self {
        GaussQ {
            re: q.clone(),
            im: Scalar::zero(),
        }
    }
    fn as_q(&self) -> Option<Q> {
        if Zero::is_zero(&self.im) {
            Some(self.re.clone())
        } else {
            None
        }
    }
    fn canonical(&self) -> String {
        format!("{}|{}", fmt_q(&self.re), fmt_q(&self.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{qi, qq};

    #[test]
    fn gauss_field_axioms_spot() {
        let a = GaussQ::new(qq(1, 2), qi(3));
        let b = GaussQ::new(qi(-2), qq(1, 5));
        // (a*b)*a^{-1} == b
        let prod = a.mul(&b);
        let back = prod.mul(&a.inv().unwrap());
        assert_eq!(back, b);
    }

    #[test]
    fn gauss_i_squares_to_minus_one() {
        let i = GaussQ::i();
        assert_eq!(i.mul(&i), GaussQ::from_q(&qi(-1)));
    }

    #[test]
    fn gauss_zero_has_no_inverse() {
        assert!(<GaussQ as Scalar>::zero().inv().is_none());
    }

    #[test]
    fn rational_scalar_matches_native_ops() {
        let a = qq(3, 7);
        let b = qq(-5, 2);
        assert_eq!(Scalar::add(&a, &b), &a + &b);
        assert_eq!(Scalar::mul(&a, &b), &a * &b);
        assert_eq!(a.inv().unwrap(), a.recip());
    }
}

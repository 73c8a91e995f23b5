//! Exact arithmetic substrate for the abelian-surface mirror-symmetry workspace.
//!
//! Everything downstream (Frobenius solving, mirror maps, holomorphic-anomaly
//! recursions, quasi-modular fits, finite matrix groups) is built on the types
//! in this crate:
//!
//! - [`Q`] — arbitrary-precision rationals (re-exported from `num`).
//! - [`scalar::Scalar`] — the coefficient-field interface shared by all series
//!   and matrix code, implemented for [`Q`], [`scalar::GaussQ`] (Gaussian
//!   rationals) and [`cyclotomic::Cyc16`] (the degree-8 field `Q(zeta_16)`).
//! - [`series::QSeries`] — dense univariate truncated power series over `Q`.
//! - [`series::BiSeries`] — sparse bivariate truncated power series with
//!   per-variable truncation windows that are tracked through arithmetic.
//! - [`logsol::LogSolution`] — polynomials in two formal logarithms with
//!   [`series::BiSeries`] coefficients, the shape of Frobenius solutions at a
//!   point of maximal unipotent monodromy.
//! - [`mat::Mat`] — small dense matrices over any [`scalar::Scalar`], with
//!   exact Gaussian elimination for solving, rank and nullspace.
//!
//! All arithmetic is exact; nothing in this crate uses floating point.

pub mod cyclotomic;
pub mod error;
pub mod logsol;
pub mod mat;
pub mod scalar;
pub mod series;

pub use cyclotomic::Cyc16;
pub use error::AlgebraError;
pub use logsol::LogSolution;
pub use mat::Mat;
pub use scalar::{GaussQ, Scalar};
pub use series::{invert_pair, BiSeries, QSeries, Substitution};

/// Arbitrary-precision rational number, the default coefficient field.
pub type Q = num::BigRational;

/// Arbitrary-precision integer.
pub type Z = num::BigInt;

/// Convenience constructor: the rational `n/d`.
///
/// # Panics
/// Panics if `d == 0`.
pub fn qq(n: i64, d: i64) -> Q {
    Q::new(Z::from(n), Z::from(d))
}

/// Convenience constructor: the integer rational `n`.
pub fn qi(n: i64) -> Q {
    Q::from(Z::from(n))
}

/// Parse a rational from the canonical `"num/den"` (or plain `"num"`) form
/// used in golden files and JSON output.
pub fn parse_q(s: &str) -> Result<Q, AlgebraError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: Z = num
        .parse()
        .map_err(|_| AlgebraError::ParseRational(s.to_string()))?;
    let d: Z = den
        .parse()
        .map_err(|_| AlgebraError::ParseRational(s.to_string()))?;
    if d == Z::from(0) {
        return Err(AlgebraError::ParseRational(s.to_string()));
    }
    Ok(Q::new(n, d))
}

/// Render a rational in the canonical `"num/den"` form (integers render
/// without the `/1` suffix). This is the inverse of [`parse_q`].
pub fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        for s in ["0", "-5", "3/4", "-22/7", "123456789123456789/2"] {
            let q = parse_q(s).unwrap();
            assert_eq!(fmt_q(&q), s);
        }
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn parse_reduces() {
        assert_eq!(parse_q("6/4").unwrap(), qq(3, 2));
        assert_eq!(fmt_q(&parse_q("6/3").unwrap()), "2");
    }
}

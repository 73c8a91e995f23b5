//! Truncated power series: dense univariate and sparse bivariate.
//!
//! # Truncation windows
//!
//! Every series carries the window through which its coefficients are valid:
//! [`QSeries`] a single degree bound, [`BiSeries`] a per-variable pair
//! `(n1, n2)` meaning "all coefficients of `x^i y^j` with `i <= n1` and
//! `j <= n2` are correct".  Arithmetic *tracks* windows: the result of an
//! operation carries the tightest window that is provably valid given the
//! inputs, using valuations (a polynomial factor `y` shifts a window up, a
//! sum shrinks it to the intersection).  A window component of
//! [`BiSeries::UNBOUNDED`] marks an exact polynomial, for which every
//! coefficient is known.
//!
//! # Functional calculus
//!
//! `exp`, `log`, division and composition are implemented with the standard
//! order-by-order recursions, entirely in exact arithmetic.  Composition goes
//! through [`Substitution`], which caches power tables of the substituted
//! series so that pulling many series through the same coordinate change (the
//! common case: pulling an entire chart through a mirror map) costs one table
//! build plus cheap scaled additions per series.  [`invert_pair`] inverts
//! two-variable mirror-type maps `q_i = z_i * unit` by Newton iteration with
//! a doubling window schedule, and certifies the result exactly.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::AlgebraError;
use crate::scalar::Scalar;
use crate::{fmt_q, Q};

// ---------------------------------------------------------------------------
// Univariate dense series over Q
// ---------------------------------------------------------------------------

/// A univariate power series over `Q`, dense, valid through `q^trunc`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries {
    /// `coeffs[k]` is the coefficient of `q^k`; length is always `trunc + 1`.
    coeffs: Vec<Q>,
    trunc: u32,
}

fn q_zero() -> Q {
    num::Zero::zero()
}
fn q_one() -> Q {
    num::One::one()
}
fn q_is_zero(q: &Q) -> bool {
    num::Zero::is_zero(q)
}

impl QSeries {
    /// The zero series, valid through `q^trunc`.
    pub fn zero(trunc: u32) -> Self {
        QSeries {
            coeffs: vec![q_zero(); trunc as usize + 1],
            trunc,
        }
    }

    /// The constant series `1`.
    pub fn one(trunc: u32) -> Self {
        Self::monomial(q_one(), 0, trunc)
    }

    /// The series `c * q^k`.
    pub fn monomial(c: Q, k: u32, trunc: u32) -> Self {
        let mut s = Self::zero(trunc);
        if k <= trunc {
            s.coeffs[k as usize] = c;
        }
        s
    }

    /// Build from explicit low-order coefficients (higher ones zero).
    pub fn from_coeffs(coeffs: Vec<Q>, trunc: u32) -> Self {
        let mut s = Self::zero(trunc);
        for (k, c) in coeffs.into_iter().enumerate() {
            if k as u32 > trunc {
                break;
            }
            s.coeffs[k] = c;
        }
        s
    }

    /// Build with `coeffs[k] = f(k)`.
    pub fn from_fn(trunc: u32, mut f: impl FnMut(u32) -> Q) -> Self {
        QSeries {
            coeffs: (0..=trunc).map(&mut f).collect(),
            trunc,
        }
    }

    /// The truncation degree: coefficients through `q^trunc` are valid.
    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    /// Coefficient of `q^k`.
    ///
    /// # Panics
    /// Panics if `k` lies beyond the truncation window: reading there is a
    /// logic error, not a zero.
    pub fn coeff(&self, k: u32) -> &Q {
        assert!(
            k <= self.trunc,
            "coefficient q^{k} requested beyond truncation {}",
            self.trunc
        );
        &self.coeffs[k as usize]
    }

    /// Set the coefficient of `q^k` (ignored beyond the window).
    pub fn set_coeff(&mut self, k: u32, c: Q) {
        if k <= self.trunc {
            self.coeffs[k as usize] = c;
        }
    }

    /// Degree of the lowest nonzero coefficient, or `trunc + 1` if none.
    pub fn valuation(&self) -> u32 {
        self.coeffs
            .iter()
            .position(|c| !q_is_zero(c))
            .map(|k| k as u32)
            .unwrap_or(self.trunc + 1)
    }

    /// True if all stored coefficients vanish.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(q_is_zero)
    }

    /// Restrict to a smaller window.
    pub fn truncate(&self, trunc: u32) -> Self {
        let t = trunc.min(self.trunc);
        QSeries {
            coeffs: self.coeffs[..=t as usize].to_vec(),
            trunc: t,
        }
    }

    /// Sum; the window is the intersection.
    pub fn add(&self, rhs: &Self) -> Self {
        let t = self.trunc.min(rhs.trunc);
        QSeries {
            coeffs: (0..=t as usize)
                .map(|k| &self.coeffs[k] + &rhs.coeffs[k])
                .collect(),
            trunc: t,
        }
    }

    /// Difference; the window is the intersection.
    pub fn sub(&self, rhs: &Self) -> Self {
        let t = self.trunc.min(rhs.trunc);
        QSeries {
            coeffs: (0..=t as usize)
                .map(|k| &self.coeffs[k] - &rhs.coeffs[k])
                .collect(),
            trunc: t,
        }
    }

    /// Product; the window accounts for valuations:
    /// `min(t_a + v_b, t_b + v_a)`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let va = self.valuation();
        let vb = rhs.valuation();
        let t = (self.trunc.saturating_add(vb)).min(rhs.trunc.saturating_add(va));
        let mut out = Self::zero(t);
        for (a, ca) in self.coeffs.iter().enumerate() {
            if q_is_zero(ca) || a as u32 > t {
                continue;
            }
            let bmax = ((t as usize) - a).min(rhs.coeffs.len() - 1);
            for (b, cb) in rhs.coeffs.iter().enumerate().take(bmax + 1) {
                if q_is_zero(cb) {
                    continue;
                }
                let k = a + b;
                out.coeffs[k] = &out.coeffs[k] + &(ca * cb);
            }
        }
        out
    }

    /// Multiply by a scalar.
    pub fn scale(&self, s: &Q) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            trunc: self.trunc,
        }
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            trunc: self.trunc,
        }
    }

    /// Quotient `self / rhs`; `rhs` must have a nonzero constant term.
    pub fn div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if q_is_zero(&rhs.coeffs[0]) {
            return Err(AlgebraError::DivisionByNonUnit);
        }
        let t = self.trunc.min(rhs.trunc);
        let inv0 = rhs.coeffs[0].recip();
        let mut out = Self::zero(t);
        for k in 0..=t as usize {
            let mut acc = self.coeffs[k].clone();
            for m in 0..k {
                if !q_is_zero(&out.coeffs[m]) && !q_is_zero(&rhs.coeffs[k - m]) {
                    acc = &acc - &(&out.coeffs[m] * &rhs.coeffs[k - m]);
                }
            }
            out.coeffs[k] = &acc * &inv0;
        }
        Ok(out)
    }

    /// Integer power (negative exponents require a unit series).
    pub fn pow(&self, e: i64) -> Result<Self, AlgebraError> {
        let base = if e < 0 {
            Self::one(self.trunc).div(self)?
        } else {
            self.clone()
        };
        let mut acc = Self::one(self.trunc);
        let mut b = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).truncate(self.trunc);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b).truncate(self.trunc);
            }
        }
        Ok(acc)
    }

    /// Exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Self, AlgebraError> {
        if !q_is_zero(&self.coeffs[0]) {
            return Err(AlgebraError::ExpRequiresZeroConstant(fmt_q(&self.coeffs[0])));
        }
        let t = self.trunc;
        let mut out = Self::zero(t);
        out.coeffs[0] = q_one();
        // k E_k = sum_{m=1..k} m a_m E_{k-m}  (from E' = a' E).
        for k in 1..=t as usize {
            let mut acc = q_zero();
            for m in 1..=k {
                if q_is_zero(&self.coeffs[m]) || q_is_zero(&out.coeffs[k - m]) {
                    continue;
                }
                let term = &(&self.coeffs[m] * &out.coeffs[k - m]) * &Q::from(num::BigInt::from(m));
                acc = &acc + &term;
            }
            out.coeffs[k] = &acc / &Q::from(num::BigInt::from(k));
        }
        Ok(out)
    }

    /// Logarithm of a series with constant term `1`.
    pub fn log(&self) -> Result<Self, AlgebraError> {
        if self.coeffs[0] != q_one() {
            return Err(AlgebraError::LogRequiresUnit(fmt_q(&self.coeffs[0])));
        }
        // theta(log f) = theta(f)/f; integrate back term by term.
        let d = self.theta().div(self)?;
        let mut out = Self::zero(self.trunc);
        for k in 1..=self.trunc as usize {
            out.coeffs[k] = &d.coeffs[k] / &Q::from(num::BigInt::from(k));
        }
        Ok(out)
    }

    /// The Euler derivative `q d/dq`.
    pub fn theta(&self) -> Self {
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * &Q::from(num::BigInt::from(k)))
                .collect(),
            trunc: self.trunc,
        }
    }

    /// Substitute `q -> q^m` (for `m >= 1`); the result is valid through
    /// `q^(m*(trunc+1)-1)`.
    pub fn compose_qpow(&self, m: u32) -> Self {
        assert!(m >= 1, "q -> q^m requires m >= 1");
        let t = m * (self.trunc + 1) - 1;
        let mut out = Self::zero(t);
        for (k, c) in self.coeffs.iter().enumerate() {
            out.coeffs[k * m as usize] = c.clone();
        }
        out
    }

    /// Borrow all coefficients.
    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut shown = 0;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if q_is_zero(c) {
                continue;
            }
            if shown == 8 {
                write!(f, " + ...")?;
                break;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({})q^{}", fmt_q(c), k)?;
            first = false;
            shown += 1;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " [O(q^{})]", self.trunc + 1)
    }
}

// ---------------------------------------------------------------------------
// Bivariate sparse series
// ---------------------------------------------------------------------------

/// A bivariate power series over an exact field `T`, sparse, with a
/// per-variable truncation window.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiSeries<T> {
    /// Nonzero coefficients, keyed by `(i, j)` exponents in lexicographic
    /// order (which makes canonical serialization free).
    terms: BTreeMap<(u32, u32), T>,
    /// Valid window `(n1, n2)`; `UNBOUNDED` marks an exact polynomial
    /// direction.
    trunc: (u32, u32),
}

impl<T: Scalar> BiSeries<T> {
    /// Window marker for an exact (polynomial) direction.
    pub const UNBOUNDED: u32 = u32::MAX;

    /// The exact zero polynomial.
    pub fn zero() -> Self {
        BiSeries {
            terms: BTreeMap::new(),
            trunc: (Self::UNBOUNDED, Self::UNBOUNDED),
        }
    }

    /// The zero series with a finite window.
    pub fn zero_window(trunc: (u32, u32)) -> Self {
        BiSeries {
            terms: BTreeMap::new(),
            trunc,
        }
    }

    /// The exact constant polynomial `c`.
    pub fn constant(c: T) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// The exact constant polynomial `1`.
    pub fn one() -> Self {
        Self::constant(T::one())
    }

    /// The exact monomial `c * x^i y^j`.
    pub fn monomial(c: T, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiSeries {
            terms,
            trunc: (Self::UNBOUNDED, Self::UNBOUNDED),
        }
    }

    /// An exact polynomial from `(i, j, coefficient)` triples.
    pub fn poly(terms: &[(u32, u32, T)]) -> Self {
        let mut s = Self::zero();
        for (i, j, c) in terms {
            s.add_to(*i, *j, c);
        }
        s
    }

    /// An exact polynomial with rational coefficients given as
    /// `(i, j, numer, denom)`.
    pub fn poly_q(terms: &[(u32, u32, i64, i64)]) -> Self {
        Self::poly(
            &terms
                .iter()
                .map(|&(i, j, n, d)| (i, j, T::from_q(&crate::qq(n, d))))
                .collect::<Vec<_>>(),
        )
    }

    /// The window `(n1, n2)`.
    pub fn trunc(&self) -> (u32, u32) {
        self.trunc
    }

    /// True if both window components are [`Self::UNBOUNDED`].
    pub fn is_exact(&self) -> bool {
        self.trunc.0 == Self::UNBOUNDED && self.trunc.1 == Self::UNBOUNDED
    }

    /// Error if the window is smaller than `need`.
    pub fn ensure_window(&self, need: (u32, u32)) -> Result<(), AlgebraError> {
        if self.trunc.0 < need.0 || self.trunc.1 < need.1 {
            return Err(AlgebraError::MalformedJson(format!(
                "window ({}, {}) smaller than required ({}, {})",
                self.trunc.0, self.trunc.1, need.0, need.1
            )));
        }
        Ok(())
    }

    /// Coefficient of `x^i y^j` (zero when absent within the window).
    ///
    /// # Panics
    /// Panics (in debug builds) when reading beyond the window.
    pub fn coeff(&self, i: u32, j: u32) -> T {
        debug_assert!(
            i <= self.trunc.0 && j <= self.trunc.1,
            "coefficient ({i},{j}) requested beyond window ({}, {})",
            self.trunc.0,
            self.trunc.1
        );
        self.terms.get(&(i, j)).cloned().unwrap_or_else(T::zero)
    }

    /// Set the coefficient of `x^i y^j` (silently dropped beyond the window,
    /// which is exactly truncation).
    pub fn set(&mut self, i: u32, j: u32, c: T) {
        if i > self.trunc.0 || j > self.trunc.1 {
            return;
        }
        if c.is_zero() {
            self.terms.remove(&(i, j));
        } else {
            self.terms.insert((i, j), c);
        }
    }

    /// Add `c` into the coefficient of `x^i y^j`.
    pub fn add_to(&mut self, i: u32, j: u32, c: &T) {
        if c.is_zero() || i > self.trunc.0 || j > self.trunc.1 {
            return;
        }
        let next = match self.terms.get(&(i, j)) {
            Some(v) => v.add(c),
            None => c.clone(),
        };
        if next.is_zero() {
            self.terms.remove(&(i, j));
        } else {
            self.terms.insert((i, j), next);
        }
    }

    /// Iterate nonzero terms in lexicographic key order.
    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &T)> {
        self.terms.iter()
    }

    /// Number of stored nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// True if no nonzero coefficients are stored.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Per-variable valuation: the minimum exponent of each variable over the
    /// support.  An empty support yields `window + 1` (saturating): the
    /// series is zero as far as it is known.
    pub fn valuation(&self) -> (u32, u32) {
        if self.terms.is_empty() {
            return (
                self.trunc.0.saturating_add(1),
                self.trunc.1.saturating_add(1),
            );
        }
        let mut v = (u32::MAX, u32::MAX);
        for (i, j) in self.terms.keys() {
            v.0 = v.0.min(*i);
            v.1 = v.1.min(*j);
        }
        v
    }

    /// Restrict to the intersection with `trunc`.
    pub fn truncate_to(&self, trunc: (u32, u32)) -> Self {
        let t = (self.trunc.0.min(trunc.0), self.trunc.1.min(trunc.1));
        let terms = self
            .terms
            .iter()
            .filter(|((i, j), _)| *i <= t.0 && *j <= t.1)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        BiSeries { terms, trunc: t }
    }

    /// Return a copy whose window is forced to `w`, both shrinking and
    /// growing.  Growing is only sound given an external argument that the
    /// coefficients are valid there; library code uses it solely inside
    /// iterations whose results are verified afterwards, and constructors use
    /// it to stamp windows on exact data.
    pub fn with_window(&self, w: (u32, u32)) -> Self {
        let mut out = self.truncate_to(w);
        out.trunc = w;
        out
    }

    /// Sum; the window is the intersection.
    pub fn add(&self, rhs: &Self) -> Self {
        let t = (self.trunc.0.min(rhs.trunc.0), self.trunc.1.min(rhs.trunc.1));
        let mut out = Self::zero_window(t);
        for ((i, j), c) in &self.terms {
            out.add_to(*i, *j, c);
        }
        for ((i, j), c) in &rhs.terms {
            out.add_to(*i, *j, c);
        }
        out
    }

    /// Difference; the window is the intersection.
    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        BiSeries {
            terms: self.terms.iter().map(|(k, v)| (*k, v.neg())).collect(),
            trunc: self.trunc,
        }
    }

    /// Multiply by a scalar.
    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero_window(self.trunc);
        }
        BiSeries {
            terms: self.terms.iter().map(|(k, v)| (*k, v.mul(s))).collect(),
            trunc: self.trunc,
        }
    }

    /// Multiply by a rational scalar.
    pub fn scale_q(&self, s: &Q) -> Self {
        self.scale(&T::from_q(s))
    }

    /// Add an exact constant.
    pub fn add_constant(&self, c: &T) -> Self {
        let mut out = self.clone();
        out.add_to(0, 0, c);
        out
    }

    /// Product.  The window is `min(t_a + v_b, t_b + v_a)` per variable, so
    /// multiplying by a monomial such as `y` *raises* the second window.
    pub fn mul(&self, rhs: &Self) -> Self {
        let va = self.valuation();
        let vb = rhs.valuation();
        let t = (
            (self.trunc.0.saturating_add(vb.0)).min(rhs.trunc.0.saturating_add(va.0)),
            (self.trunc.1.saturating_add(vb.1)).min(rhs.trunc.1.saturating_add(va.1)),
        );
        let mut out = Self::zero_window(t);
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &rhs.terms {
                let i = i1.saturating_add(*i2);
                let j = j1.saturating_add(*j2);
                if i > t.0 || j > t.1 {
                    continue;
                }
                out.add_to(i, j, &c1.mul(c2));
            }
        }
        out
    }

    /// Integer power with a non-negative exponent (use [`Self::inv_unit`]
    /// first for negative powers of units).
    pub fn pow(&self, e: u32) -> Self {
        let cap = self.trunc;
        let exact = self.is_exact();
        let mut acc = Self::one();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
                if !exact {
                    acc = acc.truncate_to(cap);
                }
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
                if !exact {
                    b = b.truncate_to(cap);
                }
            }
        }
        acc
    }

    /// Quotient `self / rhs`; `rhs` needs an invertible constant term and the
    /// result window must be finite in both directions.
    pub fn div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        let b00 = rhs.terms.get(&(0, 0)).ok_or(AlgebraError::DivisionByNonUnit)?;
        let inv0 = b00.inv().ok_or(AlgebraError::DivisionByNonUnit)?;
        let t = (self.trunc.0.min(rhs.trunc.0), self.trunc.1.min(rhs.trunc.1));
        if t.0 == Self::UNBOUNDED || t.1 == Self::UNBOUNDED {
            return Err(AlgebraError::UnboundedWindow);
        }
        let mut out = Self::zero_window(t);
        // Lexicographic sweep: the quotient coefficient at (i, j) only needs
        // quotient terms that are componentwise <= and already computed.
        for i in 0..=t.0 {
            for j in 0..=t.1 {
                let mut acc = self.terms.get(&(i, j)).cloned().unwrap_or_else(T::zero);
                for ((qi, qj), qc) in out.terms.range(..=(i, j)) {
                    if *qi > i || *qj > j || (*qi == i && *qj == j) {
                        continue;
                    }
                    if let Some(bc) = rhs.terms.get(&(i - qi, j - qj)) {
                        acc = acc.sub(&qc.mul(bc));
                    }
                }
                if !acc.is_zero() {
                    out.terms.insert((i, j), acc.mul(&inv0));
                }
            }
        }
        Ok(out)
    }

    /// Inverse `1 / self` for a unit series (finite window required).
    pub fn inv_unit(&self) -> Result<Self, AlgebraError> {
        Self::one().truncate_to(self.trunc).div(self)
    }

    /// Exponential of a series with zero constant term and finite window.
    pub fn exp(&self) -> Result<Self, AlgebraError> {
        if let Some(c) = self.terms.get(&(0, 0)) {
            return Err(AlgebraError::ExpRequiresZeroConstant(c.canonical()));
        }
        if self.trunc.0 == Self::UNBOUNDED || self.trunc.1 == Self::UNBOUNDED {
            if self.is_zero() {
                return Ok(Self::one());
            }
            return Err(AlgebraError::UnboundedWindow);
        }
        let t = self.trunc;
        let mut out = Self::zero_window(t);
        out.set(0, 0, T::one());
        // Pure-y column first (theta_y recursion), then row recursion in x:
        // i E_{ij} = sum_{k>=1} k a_{kl} E_{i-k, j-l}.
        for j in 1..=t.1 {
            let mut acc = T::zero();
            for l in 1..=j {
                let Some(a) = self.terms.get(&(0, l)) else { continue };
                if let Some(e) = out.terms.get(&(0, j - l)) {
                    acc = acc.add(&a.mul(e).mul(&T::from_i64(l as i64)));
                }
            }
            let c = acc.mul(&T::from_i64(j as i64).inv().expect("nonzero index"));
            out.set(0, j, c);
        }
        for i in 1..=t.0 {
            for j in 0..=t.1 {
                let mut acc = T::zero();
                for ((k, l), a) in &self.terms {
                    if *k < 1 || *k > i || *l > j {
                        continue;
                    }
                    if let Some(e) = out.terms.get(&(i - k, j - l)) {
                        acc = acc.add(&a.mul(e).mul(&T::from_i64(*k as i64)));
                    }
                }
                if !acc.is_zero() {
                    let c = acc.mul(&T::from_i64(i as i64).inv().expect("nonzero index"));
                    out.set(i, j, c);
                }
            }
        }
        Ok(out)
    }

    /// Logarithm of a series with constant term `1` and finite window.
    pub fn log(&self) -> Result<Self, AlgebraError> {
        match self.terms.get(&(0, 0)) {
            Some(c) if *c == T::one() => {}
            Some(c) => return Err(AlgebraError::LogRequiresUnit(c.canonical())),
            None => return Err(AlgebraError::LogRequiresUnit("0".into())),
        }
        if self.trunc.0 == Self::UNBOUNDED || self.trunc.1 == Self::UNBOUNDED {
            return Err(AlgebraError::UnboundedWindow);
        }
        let dx = self.theta1().div(self)?;
        let dy = self.theta2().div(self)?;
        let mut out = Self::zero_window(self.trunc);
        for ((i, j), c) in &dx.terms {
            if *i >= 1 {
                out.set(*i, *j, c.mul(&T::from_i64(*i as i64).inv().expect("i >= 1")));
            }
        }
        for ((i, j), c) in &dy.terms {
            if *i == 0 && *j >= 1 {
                out.set(0, *j, c.mul(&T::from_i64(*j as i64).inv().expect("j >= 1")));
            }
        }
        Ok(out)
    }

    /// The Euler derivative `x d/dx`.
    pub fn theta1(&self) -> Self {
        BiSeries {
            terms: self
                .terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|((i, j), c)| ((*i, *j), c.mul(&T::from_i64(*i as i64))))
                .collect(),
            trunc: self.trunc,
        }
    }

    /// The Euler derivative `y d/dy`.
    pub fn theta2(&self) -> Self {
        BiSeries {
            terms: self
                .terms
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|((i, j), c)| ((*i, *j), c.mul(&T::from_i64(*j as i64))))
                .collect(),
            trunc: self.trunc,
        }
    }

    /// The plain derivative `d/dx` (valid one order less in `x`).
    pub fn dx(&self) -> Self {
        BiSeries {
            terms: self
                .terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|((i, j), c)| ((*i - 1, *j), c.mul(&T::from_i64(*i as i64))))
                .collect(),
            trunc: (
                if self.trunc.0 == Self::UNBOUNDED {
                    Self::UNBOUNDED
                } else {
                    self.trunc.0.saturating_sub(1)
                },
                self.trunc.1,
            ),
        }
    }

    /// The plain derivative `d/dy` (valid one order less in `y`).
    pub fn dy(&self) -> Self {
        BiSeries {
            terms: self
                .terms
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|((i, j), c)| ((*i, *j - 1), c.mul(&T::from_i64(*j as i64))))
                .collect(),
            trunc: (
                self.trunc.0,
                if self.trunc.1 == Self::UNBOUNDED {
                    Self::UNBOUNDED
                } else {
                    self.trunc.1.saturating_sub(1)
                },
            ),
        }
    }

    /// Multiply by the monomial `x^di y^dj` (exponent shift).
    pub fn shift(&self, di: u32, dj: u32) -> Self {
        BiSeries {
            terms: self
                .terms
                .iter()
                .map(|((i, j), c)| ((i + di, j + dj), c.clone()))
                .collect(),
            trunc: (
                self.trunc.0.saturating_add(di),
                self.trunc.1.saturating_add(dj),
            ),
        }
    }

    /// Divide exactly by the monomial `x^di y^dj`, failing if any term would
    /// acquire a negative exponent.
    pub fn shift_down(&self, di: u32, dj: u32) -> Result<Self, AlgebraError> {
        let mut terms = BTreeMap::new();
        for ((i, j), c) in &self.terms {
            if *i < di || *j < dj {
                return Err(AlgebraError::InversionShape(*i, *j));
            }
            terms.insert((i - di, j - dj), c.clone());
        }
        Ok(BiSeries {
            terms,
            trunc: (
                if self.trunc.0 == Self::UNBOUNDED {
                    Self::UNBOUNDED
                } else {
                    self.trunc.0.saturating_sub(di)
                },
                if self.trunc.1 == Self::UNBOUNDED {
                    Self::UNBOUNDED
                } else {
                    self.trunc.1.saturating_sub(dj)
                },
            ),
        })
    }

    /// Convert the coefficient field.
    pub fn map_scalar<U: Scalar>(&self, mut f: impl FnMut(&T) -> U) -> BiSeries<U> {
        let mut out = BiSeries::<U>::zero_window(self.trunc);
        for ((i, j), c) in &self.terms {
            out.set(*i, *j, f(c));
        }
        out
    }

    /// All terms with a fixed second exponent, as `(first_exponent, coeff)`.
    pub fn slice_second(&self, j: u32) -> Vec<(u32, T)> {
        self.terms
            .iter()
            .filter(|((_, jj), _)| *jj == j)
            .map(|((i, _), c)| (*i, c.clone()))
            .collect()
    }

    /// Substitute `(x, y) -> (x_sub, y_sub)` through a one-shot
    /// [`Substitution`]; see there for the validity rules.
    pub fn substitute(&self, x_sub: &Self, y_sub: &Self) -> Result<Self, AlgebraError> {
        let w = (
            self.trunc.0.min(x_sub.trunc.0).min(y_sub.trunc.0),
            self.trunc.1.min(x_sub.trunc.1).min(y_sub.trunc.1),
        );
        let mut sub = Substitution::new(x_sub.clone(), y_sub.clone(), w)?;
        sub.apply(self)
    }

    /// Canonical JSON form:
    /// `{"truncation":[n1,n2],"terms":[[i,j,"coeff"],...]}` with terms in
    /// lexicographic order and rationals rendered as `num/den`.
    pub fn to_canonical_json(&self) -> Result<String, AlgebraError> {
        if self.trunc.0 == Self::UNBOUNDED || self.trunc.1 == Self::UNBOUNDED {
            return Err(AlgebraError::UnboundedWindow);
        }
        let mut s = String::new();
        s.push_str(&format!(
            "{{\"truncation\":[{},{}],\"terms\":[",
            self.trunc.0, self.trunc.1
        ));
        let mut first = true;
        for ((i, j), c) in &self.terms {
            if !first {
                s.push(',');
            }
            first = false;
            s.push_str(&format!("[{},{},\"{}\"]", i, j, c.canonical()));
        }
        s.push_str("]}");
        Ok(s)
    }
}

impl BiSeries<Q> {
    /// Parse the canonical JSON form produced by
    /// [`BiSeries::to_canonical_json`] (rational coefficients).
    pub fn from_canonical_json(s: &str) -> Result<Self, AlgebraError> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| AlgebraError::MalformedJson(e.to_string()))?;
        let tr = v
            .get("truncation")
            .and_then(|t| t.as_array())
            .ok_or_else(|| AlgebraError::MalformedJson("missing truncation".into()))?;
        if tr.len() != 2 {
            return Err(AlgebraError::MalformedJson("truncation must be a pair".into()));
        }
        let n1 = tr[0]
            .as_u64()
            .ok_or_else(|| AlgebraError::MalformedJson("bad truncation".into()))? as u32;
        let n2 = tr[1]
            .as_u64()
            .ok_or_else(|| AlgebraError::MalformedJson("bad truncation".into()))? as u32;
        let mut out = Self::zero_window((n1, n2));
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| AlgebraError::MalformedJson("missing terms".into()))?;
        for t in terms {
            let arr = t
                .as_array()
                .ok_or_else(|| AlgebraError::MalformedJson("term must be an array".into()))?;
            if arr.len() != 3 {
                return Err(AlgebraError::MalformedJson("term must be [i,j,coeff]".into()));
            }
            let i = arr[0]
                .as_u64()
                .ok_or_else(|| AlgebraError::MalformedJson("bad exponent".into()))? as u32;
            let j = arr[1]
                .as_u64()
                .ok_or_else(|| AlgebraError::MalformedJson("bad exponent".into()))? as u32;
            let c = arr[2]
                .as_str()
                .ok_or_else(|| AlgebraError::MalformedJson("coefficient must be a string".into()))?;
            out.set(i, j, crate::parse_q(c)?);
        }
        Ok(out)
    }
}

impl<T: Scalar> fmt::Display for BiSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut shown = 0;
        let mut first = true;
        for ((i, j), c) in &self.terms {
            if shown == 8 {
                write!(f, " + ...")?;
                break;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c})x^{i}y^{j}")?;
            first = false;
            shown += 1;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " [window ({}, {})]", self.trunc.0, self.trunc.1)
    }
}

// ---------------------------------------------------------------------------
// Cached composition
// ---------------------------------------------------------------------------

/// A coordinate substitution `(x, y) -> (X, Y)` with cached power tables.
///
/// Building the tables costs one series product per power; applying the
/// substitution to a series afterwards costs only scaled additions plus one
/// product per distinct second-variable exponent.  Reuse one value across all
/// pullbacks through the same coordinate change.
///
/// For a *windowed* (non-polynomial) input the substitution requires
/// `X = x * unit` and `Y = y * unit` shapes (every `X` term must contain `x`,
/// every `Y` term must contain `y`); this is what makes the result window
/// `min` of the three input windows sound.  Exact polynomials may be pulled
/// through arbitrary substitutions, including ones with constant terms.
pub struct Substitution<T> {
    x_pows: Vec<BiSeries<T>>,
    y_pows: Vec<BiSeries<T>>,
    window: (u32, u32),
    x_local: bool,
    y_local: bool,
}

impl<T: Scalar> Substitution<T> {
    /// Prepare a substitution evaluated within `window`.
    pub fn new(
        x_sub: BiSeries<T>,
        y_sub: BiSeries<T>,
        window: (u32, u32),
    ) -> Result<Self, AlgebraError> {
        if window.0 == BiSeries::<T>::UNBOUNDED || window.1 == BiSeries::<T>::UNBOUNDED {
            return Err(AlgebraError::UnboundedWindow);
        }
        let x_local = x_sub.valuation().0 >= 1;
        let y_local = y_sub.valuation().1 >= 1;
        let x0 = x_sub.truncate_to(window);
        let y0 = y_sub.truncate_to(window);
        Ok(Substitution {
            x_pows: vec![BiSeries::one().with_window(window), x0],
            y_pows: vec![BiSeries::one().with_window(window), y0],
            window,
            x_local,
            y_local,
        })
    }

    /// The evaluation window.
    pub fn window(&self) -> (u32, u32) {
        self.window
    }

    fn x_pow(&mut self, k: u32) -> &BiSeries<T> {
        while self.x_pows.len() <= k as usize {
            let next = self.x_pows[self.x_pows.len() - 1]
                .mul(&self.x_pows[1])
                .truncate_to(self.window);
            self.x_pows.push(next);
        }
        &self.x_pows[k as usize]
    }

    fn y_pow(&mut self, k: u32) -> BiSeries<T> {
        while self.y_pows.len() <= k as usize {
            let next = self.y_pows[self.y_pows.len() - 1]
                .mul(&self.y_pows[1])
                .truncate_to(self.window);
            self.y_pows.push(next);
        }
        self.y_pows[k as usize].clone()
    }

    /// Pull `f` through the substitution.
    pub fn apply(&mut self, f: &BiSeries<T>) -> Result<BiSeries<T>, AlgebraError> {
        let exact = f.is_exact();
        if !exact && (!self.x_local || !self.y_local) {
            let var = if !self.x_local { 0 } else { 1 };
            return Err(AlgebraError::SubstitutionNotLocal { var });
        }
        // Result window: intersection of f's window with the evaluation
        // window (sound because X carries x and Y carries y, or f is exact).
        let rw = (f.trunc.0.min(self.window.0), f.trunc.1.min(self.window.1));

        // Select the terms of f that can contribute within the window.  For a
        // local substitution, x-exponents beyond the window produce only
        // vanishing contributions and are skipped.
        let imax = if self.x_local { self.window.0 } else { u32::MAX };
        let jmax = if self.y_local { self.window.1 } else { u32::MAX };

        // Group by second exponent: each group is a sum of scaled X powers,
        // then one product with Y^j.
        let mut by_j: BTreeMap<u32, Vec<(u32, T)>> = BTreeMap::new();
        for ((i, j), c) in f.iter() {
            if *i > imax || *j > jmax {
                continue;
            }
            if !exact && (*i > rw.0 || *j > rw.1) {
                continue;
            }
            by_j.entry(*j).or_default().push((*i, c.clone()));
        }
        let mut acc = BiSeries::zero_window(rw);
        for (j, row) in by_j {
            let mut pj = BiSeries::zero_window(self.window);
            for (i, c) in row {
                let xp = self.x_pow(i).clone();
                for ((a, b), v) in xp.iter() {
                    pj.add_to(*a, *b, &v.mul(&c));
                }
            }
            let term = if j == 0 { pj } else { pj.mul(&self.y_pow(j)) };
            for ((a, b), v) in term.iter() {
                acc.add_to(*a, *b, v);
            }
        }
        Ok(acc)
    }
}

// ---------------------------------------------------------------------------
// Two-variable inversion
// ---------------------------------------------------------------------------

/// Invert the local coordinate change `(q_1, q_2) = (u(x, y), v(x, y))`
/// where `u = x * unit` and `v = y * unit`, returning `(x(q), y(q))` valid
/// within `window`.
///
/// Internally Newton iteration on `G(z) = (z_1 u_1(z), z_2 u_2(z)) - q` (with
/// `u_i` the unit factors) under a doubling window schedule; the defining
/// identities `u(x(q), y(q)) = q_1`, `v(x(q), y(q)) = q_2` are re-checked
/// exactly within the final window before returning.
pub fn invert_pair<T: Scalar>(
    u: &BiSeries<T>,
    v: &BiSeries<T>,
    window: (u32, u32),
) -> Result<(BiSeries<T>, BiSeries<T>), AlgebraError> {
    // Peel the leading variable off each map to obtain the unit factors.
    let u1 = &u.shift_down(1, 0)?;
    let u2 = &v.shift_down(0, 1)?;
    for w in [u1, u2] {
        let c = w.coeff(0, 0);
        if c.is_zero() || c.inv().is_none() {
            return Err(AlgebraError::DivisionByNonUnit);
        }
    }
    if window.0 == BiSeries::<T>::UNBOUNDED || window.1 == BiSeries::<T>::UNBOUNDED {
        return Err(AlgebraError::UnboundedWindow);
    }
    // Partial derivatives of the forward map, pulled through the current
    // iterate at every step: dG_i/dz_j = delta_ij u_i + z_i du_i/dz_j.
    let du = [u1.dx(), u1.dy(), u2.dx(), u2.dy()];

    let mk_q = |w: (u32, u32)| {
        (
            BiSeries::monomial(T::one(), 1, 0).with_window(w),
            BiSeries::monomial(T::one(), 0, 1).with_window(w),
        )
    };

    let mut z1: BiSeries<T>;
    let mut z2: BiSeries<T>;
    {
        let w0 = (window.0.min(2), window.1.min(2));
        let (q1, q2) = mk_q(w0);
        z1 = q1;
        z2 = q2;
    }

    let mut stage: u32 = 2;
    loop {
        let w = (window.0.min(stage), window.1.min(stage));
        z1 = z1.with_window(w);
        z2 = z2.with_window(w);
        let (q1, q2) = mk_q(w);
        // Newton converges quadratically; a handful of steps per stage with
        // an early exit on stabilization is plenty.
        for _ in 0..64 {
            let mut sub = Substitution::new(z1.clone(), z2.clone(), w)?;
            let u1z = sub.apply(&u1.truncate_to(w))?.with_window(w);
            let u2z = sub.apply(&u2.truncate_to(w))?.with_window(w);
            let d11 = sub.apply(&du[0].truncate_to(w))?.with_window(w);
            let d12 = sub.apply(&du[1].truncate_to(w))?.with_window(w);
            let d21 = sub.apply(&du[2].truncate_to(w))?.with_window(w);
            let d22 = sub.apply(&du[3].truncate_to(w))?.with_window(w);

            let g1 = z1.mul(&u1z).with_window(w).sub(&q1);
            let g2 = z2.mul(&u2z).with_window(w).sub(&q2);
            if g1.is_zero() && g2.is_zero() {
                break;
            }

            // Jacobian entries dG_i/dz_j evaluated along the iterate.
            let j11 = u1z.add(&z1.mul(&d11).with_window(w));
            let j12 = z1.mul(&d12).with_window(w);
            let j21 = z2.mul(&d21).with_window(w);
            let j22 = u2z.add(&z2.mul(&d22).with_window(w));
            let det = j11.mul(&j22).sub(&j12.mul(&j21)).with_window(w);

            // delta = J^{-1} g via the 2x2 adjugate.
            let n1 = j22.mul(&g1).sub(&j12.mul(&g2)).with_window(w);
            let n2 = j11.mul(&g2).sub(&j21.mul(&g1)).with_window(w);
            let delta1 = n1.div(&det)?;
            let delta2 = n2.div(&det)?;
            z1 = z1.sub(&delta1).with_window(w);
            z2 = z2.sub(&delta2).with_window(w);
        }
        if w == window {
            break;
        }
        stage = stage.saturating_mul(2);
    }

    // Certify q_i = z_i u_i(z(q)) exactly within the window.
    let (q1, q2) = mk_q(window);
    let mut sub = Substitution::new(z1.clone(), z2.clone(), window)?;
    let c1 = z1
        .mul(&sub.apply(&u1.truncate_to(window))?)
        .truncate_to(window);
    let c2 = z2
        .mul(&sub.apply(&u2.truncate_to(window))?)
        .truncate_to(window);
    if c1.sub(&q1.truncate_to(window)).is_zero() && c2.sub(&q2.truncate_to(window)).is_zero() {
        Ok((z1, z2))
    } else {
        let v = z1.valuation();
        Err(AlgebraError::InversionShape(v.0, v.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{qi, qq};

    type BQ = BiSeries<Q>;

    #[test]
    fn qseries_product_difference_of_squares() {
        let one_plus = QSeries::from_coeffs(vec![qi(1), qi(1)], 10);
        let one_minus = QSeries::from_coeffs(vec![qi(1), qi(-1)], 10);
        let p = one_plus.mul(&one_minus);
        assert_eq!(*p.coeff(0), qi(1));
        assert_eq!(*p.coeff(1), qi(0));
        assert_eq!(*p.coeff(2), qi(-1));
    }

    #[test]
    fn qseries_geometric_inverse() {
        let one_minus = QSeries::from_coeffs(vec![qi(1), qi(-1)], 12);
        let g = QSeries::one(12).div(&one_minus).unwrap();
        for k in 0..=12 {
            assert_eq!(*g.coeff(k), qi(1));
        }
    }

    #[test]
    fn qseries_mercator_log() {
        // log(1/(1-q)) = sum q^n / n.
        let one_minus = QSeries::from_coeffs(vec![qi(1), qi(-1)], 9);
        let g = QSeries::one(9).div(&one_minus).unwrap();
        let l = g.log().unwrap();
        for k in 1..=9 {
            assert_eq!(*l.coeff(k), qq(1, k as i64));
        }
    }

    #[test]
    fn qseries_exp_log_round_trip() {
        let f = QSeries::from_coeffs(vec![qi(0), qi(3), qq(-7, 2), qi(1), qq(5, 3)], 15);
        let back = f.exp().unwrap().log().unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn qseries_pow_negative() {
        let f = QSeries::from_coeffs(vec![qi(1), qi(2)], 8);
        let p = f.pow(-2).unwrap();
        let check = p.mul(&f).mul(&f).truncate(8);
        assert_eq!(check, QSeries::one(8));
    }

    #[test]
    fn qseries_qpow_substitution() {
        let f = QSeries::from_coeffs(vec![qi(1), qi(5), qi(7)], 3);
        let g = f.compose_qpow(3);
        assert_eq!(g.trunc(), 11);
        assert_eq!(*g.coeff(3), qi(5));
        assert_eq!(*g.coeff(6), qi(7));
        assert_eq!(*g.coeff(4), qi(0));
    }

    #[test]
    fn biseries_window_intersection_on_add() {
        let a = BQ::monomial(qi(1), 0, 0).with_window((10, 4));
        let b = BQ::monomial(qi(1), 1, 0).with_window((6, 9));
        assert_eq!(a.add(&b).trunc(), (6, 4));
    }

    #[test]
    fn biseries_monomial_factor_raises_window() {
        let a = BQ::poly_q(&[(0, 0, 1, 1), (1, 0, 2, 1)]).with_window((5, 3));
        let y = BQ::monomial(qi(1), 0, 1);
        let p = y.mul(&a);
        assert_eq!(p.trunc(), (5, 4));
        assert_eq!(p.coeff(1, 1), qi(2));
    }

    #[test]
    fn biseries_division_geometric() {
        // 1 / (1 - x - y) = sum binomial(i+j, i) x^i y^j.
        let d = BQ::poly_q(&[(0, 0, 1, 1), (1, 0, -1, 1), (0, 1, -1, 1)]);
        let g = BQ::one()
            .with_window((6, 6))
            .div(&d.with_window((6, 6)))
            .unwrap();
        let binom = |n: u32, k: u32| -> i64 {
            let mut r: i64 = 1;
            for t in 0..k {
                r = r * (n - t) as i64 / (t + 1) as i64;
            }
            r
        };
        for i in 0..=6u32 {
            for j in 0..=6u32 {
                assert_eq!(g.coeff(i, j), qi(binom(i + j, i)), "at ({i},{j})");
            }
        }
    }

    #[test]
    fn biseries_exp_log_round_trip() {
        let f = BQ::poly_q(&[(1, 0, 1, 2), (0, 1, -2, 3), (1, 1, 1, 1), (2, 1, 4, 5)])
            .with_window((7, 5));
        let e = f.exp().unwrap();
        assert_eq!(e.coeff(0, 0), qi(1));
        let back = e.log().unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn biseries_exp_matches_direct_sum() {
        // exp(x + y) coefficients are 1/(i! j!).
        let f = BQ::poly_q(&[(1, 0, 1, 1), (0, 1, 1, 1)]).with_window((5, 5));
        let e = f.exp().unwrap();
        let fact = |n: u32| -> i64 { (1..=n as i64).product::<i64>().max(1) };
        for i in 0..=5u32 {
            for j in 0..=5u32 {
                assert_eq!(e.coeff(i, j), qq(1, fact(i) * fact(j)));
            }
        }
    }

    #[test]
    fn substitution_linear_shear() {
        // f(x, y) = x y; substitute x -> x(1 + y), y -> y: get x y + x y^2.
        let f = BQ::monomial(qi(1), 1, 1);
        let xs = BQ::poly_q(&[(1, 0, 1, 1), (1, 1, 1, 1)]);
        let ys = BQ::monomial(qi(1), 0, 1);
        let g = f
            .with_window((4, 4))
            .substitute(&xs.with_window((4, 4)), &ys.with_window((4, 4)))
            .unwrap();
        assert_eq!(g.coeff(1, 1), qi(1));
        assert_eq!(g.coeff(1, 2), qi(1));
        assert_eq!(g.coeff(2, 1), qi(0));
    }

    #[test]
    fn substitution_rejects_nonlocal_on_windowed_input() {
        let f = BQ::monomial(qi(1), 1, 0).with_window((3, 3));
        // X has a constant term: fine for polynomials, not for windowed input.
        let xs = BQ::poly_q(&[(0, 0, 1, 1), (1, 0, 1, 1)]);
        let ys = BQ::monomial(qi(1), 0, 1);
        let err = f.substitute(&xs.with_window((3, 3)), &ys.with_window((3, 3)));
        assert!(matches!(
            err,
            Err(AlgebraError::SubstitutionNotLocal { var: 0 })
        ));
    }

    #[test]
    fn polynomial_substitution_with_constant_terms() {
        // p(x, y) = x^2 pulled through x -> (1 + x)/2: exact polynomial path.
        let p = BQ::monomial(qi(1), 2, 0);
        let xs = BQ::poly_q(&[(0, 0, 1, 2), (1, 0, 1, 2)]);
        let ys = BQ::monomial(qi(1), 0, 1);
        let g = p
            .substitute(&xs.with_window((5, 5)), &ys.with_window((5, 5)))
            .unwrap();
        assert_eq!(g.coeff(0, 0), qq(1, 4));
        assert_eq!(g.coeff(1, 0), qq(1, 2));
        assert_eq!(g.coeff(2, 0), qq(1, 4));
    }

    #[test]
    fn invert_pair_identity_map() {
        let w = (5u32, 5u32);
        let u = BQ::monomial(qi(1), 1, 0);
        let v = BQ::monomial(qi(1), 0, 1);
        let (x, y) = invert_pair(&u, &v, w).unwrap();
        assert_eq!(x, BQ::monomial(qi(1), 1, 0).truncate_to(w).with_window(w));
        assert_eq!(y, BQ::monomial(qi(1), 0, 1).truncate_to(w).with_window(w));
    }

    #[test]
    fn invert_pair_closed_form() {
        // q1 = x/(1 - x), q2 = y (1 + x): in closed form x = q1/(1 + q1).
        let w = (8u32, 4u32);
        let big = (w.0 + 1, w.1 + 1);
        let u = BQ::monomial(qi(1), 1, 0)
            .with_window(big)
            .div(&BQ::poly_q(&[(0, 0, 1, 1), (1, 0, -1, 1)]).with_window(big))
            .unwrap();
        let v = BQ::poly_q(&[(0, 1, 1, 1), (1, 1, 1, 1)]);
        let (x, y) = invert_pair(&u, &v, w).unwrap();
        // Round trip: u(x(q), y(q)) = q1 and v(x(q), y(q)) = q2.
        let mut sub = Substitution::new(x.clone(), y.clone(), w).unwrap();
        let q1_back = sub.apply(&u.truncate_to(w)).unwrap();
        assert_eq!(
            q1_back.truncate_to(w),
            BQ::monomial(qi(1), 1, 0).truncate_to(w)
        );
        let q2_back = sub.apply(&v).unwrap();
        assert_eq!(
            q2_back.truncate_to(w),
            BQ::monomial(qi(1), 0, 1).truncate_to(w)
        );
        // Closed form for the first component.
        let x_exact = BQ::monomial(qi(1), 1, 0)
            .with_window(w)
            .div(&BQ::poly_q(&[(0, 0, 1, 1), (1, 0, 1, 1)]).with_window(w))
            .unwrap();
        assert_eq!(x.truncate_to(w), x_exact.truncate_to(w));
    }

    #[test]
    fn invert_pair_rejects_wrong_shape() {
        // u lacking the leading x factor must be rejected.
        let u = BQ::poly_q(&[(0, 1, 1, 1)]);
        let v = BQ::monomial(qi(1), 0, 1);
        assert!(invert_pair(&u, &v, (4, 4)).is_err());
    }

    #[test]
    fn canonical_json_round_trip() {
        let f = BQ::poly_q(&[(0, 0, 1, 1), (2, 1, -3, 7), (1, 0, 5, 1)]).with_window((4, 2));
        let js = f.to_canonical_json().unwrap();
        assert_eq!(
            js,
            r#"{"truncation":[4,2],"terms":[[0,0,"1"],[1,0,"5"],[2,1,"-3/7"]]}"#
        );
        let back = BQ::from_canonical_json(&js).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn theta_and_partial_operators() {
        let f = BQ::poly_q(&[(2, 3, 1, 1)]).with_window((5, 5));
        assert_eq!(f.theta1().coeff(2, 3), qi(2));
        assert_eq!(f.theta2().coeff(2, 3), qi(3));
        assert_eq!(f.dx().coeff(1, 3), qi(2));
        assert_eq!(f.dy().coeff(2, 2), qi(3));
        assert_eq!(f.dx().trunc(), (4, 5));
    }
}

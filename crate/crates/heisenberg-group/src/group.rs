//! Generator matrices, normalizer words, and exact subgroup closures.
//!
//! The Heisenberg group acts on the homogeneous coordinates `x0..x7` by a
//! cyclic shift `sigma: x_i -> x_{i-1}` and a diagonal twist
//! `tau: x_i -> xi^{-i} x_i` with `xi` a primitive 8th root of unity.  Its
//! normalizer inside `GL(8)` is generated on top of these by two Fourier-type
//! matrices `S` and `T` carrying an exact `1/(2*sqrt(2))` prefactor; the
//! half-integer exponents appearing in `S` are the reason all arithmetic
//! lives in the 16th (not 8th) cyclotomic field.
//!
//! A [`NormalizerElement`] pairs the 8x8 coordinate action with the induced
//! 3x3 action on the plane `[w0, w1, w2]` parameterizing the family, so that
//! products of words keep the two actions synchronized.  [`group_closure`]
//! enumerates finite matrix groups breadth-first with exact hashing and an
//! element cap, certifying group orders instead of assuming them.

use std::collections::HashSet;

use algebra_core::{qi, qq, Cyc16, Mat, Scalar};

use crate::error::GroupError;

/// The four generator matrices of the symmetry group: the two Heisenberg
/// generators and the two normalizer generators.
#[derive(Clone, Debug)]
pub struct Generators {
    /// Cyclic shift `sigma: x_i -> x_{i-1}` (indices mod 8).
    pub sigma: Mat<Cyc16>,
    /// Diagonal twist `tau: x_i -> xi^{-i} x_i`.
    pub tau: Mat<Cyc16>,
    /// Fourier-type generator `S = (1/(2*sqrt2)) * (xi^{-(i-j)^2/2})`.
    pub s: Mat<Cyc16>,
    /// Fourier-type generator `T = (1/(2*sqrt2)) * (xi^{-ij})`.
    pub t: Mat<Cyc16>,
}

/// Exact prefactor `1/(2*sqrt(2)) = sqrt(2)/4`.
fn fourier_prefactor() -> Cyc16 {
    Cyc16::sqrt2().mul(&Cyc16::from_q(&qq(1, 4)))
}

/// Builds the four 8x8 generator matrices exactly.
pub fn generators() -> Generators {
    let sigma = Mat::from_fn(8, 8, |i, j| {
        if (i + 7) % 8 == j {
            Cyc16::from_q(&qi(1))
        } else {
            Cyc16::new_zero()
        }
    });
    let tau = Mat::from_fn(8, 8, |i, j| {
        if i == j {
            Cyc16::xi_pow(-(i as i64))
        } else {
            Cyc16::new_zero()
        }
    });
    let pref = fourier_prefactor();
    // xi^{-(i-j)^2/2} is a power of the 16th root zeta: zeta^{-(i-j)^2}.
    let s = Mat::from_fn(8, 8, |i, j| {
        let d = i as i64 - j as i64;
        pref.mul(&Cyc16::monomial(qi(1), -(d * d)))
    });
    let t = Mat::from_fn(8, 8, |i, j| pref.mul(&Cyc16::xi_pow(-((i * j) as i64))));
    Generators { sigma, tau, s, t }
}

/// The 3x3 plane action of `S`, in the fixed normalization whose scalar
/// prefactor is `xi/2`.
pub fn rho_s() -> Mat<Cyc16> {
    let half_xi = Cyc16::xi().mul(&Cyc16::from_q(&qq(1, 2)));
    let e = |k: i64| Cyc16::xi_pow(k);
    let two = Cyc16::from_q(&qi(2));
    Mat::from_rows(vec![
        vec![e(7), two.clone(), e(3)],
        vec![e(0), Cyc16::new_zero(), e(0)],
        vec![e(3), two, e(7)],
    ])
    .scale(&half_xi)
}

/// The 3x3 plane action of `T`, in the fixed normalization whose scalar
/// prefactor is `xi^6/2`.
pub fn rho_t() -> Mat<Cyc16> {
    let half = Cyc16::xi_pow(6).mul(&Cyc16::from_q(&qq(1, 2)));
    let one = || Cyc16::from_q(&qi(1));
    let two = || Cyc16::from_q(&qi(2));
    Mat::from_rows(vec![
        vec![one(), two(), one()],
        vec![one(), Cyc16::new_zero(), one().neg()],
        vec![one(), two().neg(), one()],
    ])
    .scale(&half)
}

/// A normalizer word tracked with both of its actions: the 8x8 matrix on the
/// homogeneous coordinates and the induced 3x3 matrix on the parameter
/// plane.  Heisenberg generators act trivially on the plane.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalizerElement {
    /// Action on the homogeneous coordinates `x0..x7`.
    pub linear: Mat<Cyc16>,
    /// Induced action on the plane `[w0, w1, w2]`.
    pub plane: Mat<Cyc16>,
}

impl NormalizerElement {
    /// The identity element.
    pub fn identity() -> Self {
        Self {
            linear: Mat::identity(8),
            plane: Mat::identity(3),
        }
    }

    /// The cyclic shift generator (trivial plane action).
    pub fn sigma() -> Self {
        Self {
            linear: generators().sigma,
            plane: Mat::identity(3),
        }
    }

    /// The diagonal twist generator (trivial plane action).
    pub fn tau() -> Self {
        Self {
            linear: generators().tau,
            plane: Mat::identity(3),
        }
    }

    /// The Fourier-type generator `S` with its plane action.
    pub fn s() -> Self {
        Self {
            linear: generators().s,
            plane: rho_s(),
        }
    }

    /// The Fourier-type generator `T` with its plane action.
    pub fn t() -> Self {
        Self {
            linear: generators().t,
            plane: rho_t(),
        }
    }

    /// Product `self * rhs`, multiplying both actions.
    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            linear: self
                .linear
                .mul(&rhs.linear)
                .expect("8x8 product shape is fixed"),
            plane: self
                .plane
                .mul(&rhs.plane)
                .expect("3x3 product shape is fixed"),
        }
    }

    /// `self` raised to a nonnegative power.
    pub fn pow(&self, n: u64) -> Self {
        let mut out = Self::identity();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Exact inverse of both actions.
    pub fn inv(&self) -> Result<Self, GroupError> {
        Ok(Self {
            linear: self.linear.inv()?,
            plane: self.plane.inv()?,
        })
    }
}

/// Result of a breadth-first closure enumeration.
#[derive(Clone, Debug)]
pub struct Closure<T> {
    /// Number of distinct elements found.
    pub order: usize,
    /// Every element, in discovery order (identity first).
    pub elements: Vec<T>,
}

/// Enumerates the finite matrix group generated by `gens` by breadth-first
/// products, with exact equality (no floating-point fingerprints).  Errors
/// if more than `cap` elements are found, which guards against accidentally
/// enumerating an infinite group.
pub fn group_closure(gens: &[Mat<Cyc16>], cap: usize) -> Result<Closure<Mat<Cyc16>>, GroupError> {
    let n = gens
        .first()
        .map(Mat::nrows)
        .expect("at least one generator");
    let id = Mat::identity(n);
    let mut seen: HashSet<Mat<Cyc16>> = HashSet::new();
    let mut elements = Vec::new();
    let mut queue = Vec::new();
    seen.insert(id.clone());
    elements.push(id.clone());
    queue.push(id);
    while let Some(a) = queue.pop() {
        for g in gens {
            let b = a.mul(g)?;
            if seen.insert(b.clone()) {
                if seen.len() > cap {
                    return Err(GroupError::ClosureCapExceeded { cap });
                }
                elements.push(b.clone());
                queue.push(b);
            }
        }
    }
    Ok(Closure {
        order: elements.len(),
        elements,
    })
}

/// Closure enumeration for normalizer words, keeping the plane action of
/// every element synchronized with its coordinate action.
pub fn closure_with_plane(
    gens: &[NormalizerElement],
    cap: usize,
) -> Result<Closure<NormalizerElement>, GroupError> {
    let id = NormalizerElement::identity();
    let mut seen: HashSet<(Mat<Cyc16>, Mat<Cyc16>)> = HashSet::new();
    let mut elements = Vec::new();
    let mut queue = Vec::new();
    seen.insert((id.linear.clone(), id.plane.clone()));
    elements.push(id.clone());
    queue.push(id);
    while let Some(a) = queue.pop() {
        for g in gens {
            let b = a.mul(g);
            if seen.insert((b.linear.clone(), b.plane.clone())) {
                if seen.len() > cap {
                    return Err(GroupError::ClosureCapExceeded { cap });
                }
                elements.push(b.clone());
                queue.push(b);
            }
        }
    }
    Ok(Closure {
        order: elements.len(),
        elements,
    })
}

/// If `b == lambda * a` entrywise for one exact scalar `lambda`, returns
/// `Some(lambda)`.  Matrices are compared after locating the first nonzero
/// entry of `a` in row-major order, so the result is deterministic.
pub fn projective_ratio(a: &Mat<Cyc16>, b: &Mat<Cyc16>) -> Option<Cyc16> {
    if a.nrows() != b.nrows() || a.ncols() != b.ncols() {
        return None;
    }
    let mut lambda: Option<Cyc16> = None;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            let (x, y) = (a.at(i, j), b.at(i, j));
            if Scalar::is_zero(x) {
                if !Scalar::is_zero(y) {
                    return None;
                }
                continue;
            }
            match &lambda {
                None => lambda = Some(y.mul(&x.inv()?)),
                Some(l) => {
                    if y != &x.mul(l) {
                        return None;
                    }
                }
            }
        }
    }
    lambda
}

/// Whether every row and every column of `m` has exactly one nonzero entry,
/// i.e. `m` is a permutation matrix up to nonzero scalings of its entries.
pub fn is_projective_permutation(m: &Mat<Cyc16>) -> bool {
    let n = m.nrows();
    if m.ncols() != n {
        return false;
    }
    let mut col_used = vec![false; n];
    for i in 0..n {
        let mut found = None;
        for j in 0..n {
            if !Scalar::is_zero(m.at(i, j)) {
                if found.is_some() {
                    return false;
                }
                found = Some(j);
            }
        }
        match found {
            Some(j) if !col_used[j] => col_used[j] = true,
            _ => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xi_id(n: usize, k: i64) -> Mat<Cyc16> {
        Mat::identity(n).scale(&Cyc16::xi_pow(k))
    }

    #[test]
    fn heisenberg_relations() {
        let g = generators();
        assert_eq!(g.sigma.pow(8).unwrap(), Mat::identity(8));
        assert_eq!(g.tau.pow(8).unwrap(), Mat::identity(8));
        let comm = g
            .sigma
            .mul(&g.tau)
            .unwrap()
            .mul(&g.sigma.inv().unwrap())
            .unwrap()
            .mul(&g.tau.inv().unwrap())
            .unwrap();
        assert_eq!(comm, xi_id(8, 1));
    }

    #[test]
    fn fourier_generators_invertible() {
        let g = generators();
        assert_eq!(g.s.mul(&g.s.inv().unwrap()).unwrap(), Mat::identity(8));
        assert_eq!(g.t.mul(&g.t.inv().unwrap()).unwrap(), Mat::identity(8));
    }

    #[test]
    fn projective_ratio_finds_scalar() {
        let g = generators();
        let scaled = g.s.scale(&Cyc16::xi_pow(3));
        assert_eq!(projective_ratio(&g.s, &scaled), Some(Cyc16::xi_pow(3)));
        assert_eq!(projective_ratio(&g.s, &g.t), None);
    }

    #[test]
    fn permutation_shape_detection() {
        let g = generators();
        assert!(is_projective_permutation(&g.sigma));
        assert!(is_projective_permutation(&g.tau));
        assert!(!is_projective_permutation(&g.s));
    }

    #[test]
    fn small_closure_dihedral() {
        // <sigma> alone is cyclic of order 8.
        let g = generators();
        let c = group_closure(&[g.sigma.clone()], 100).unwrap();
        assert_eq!(c.order, 8);
        // Cap errors are explicit.
        assert!(matches!(
            group_closure(&[g.sigma], 5),
            Err(GroupError::ClosureCapExceeded { cap: 5 })
        ));
    }
}

//! The four defining quadrics and the induced 4x4 representation of the
//! normalizer.
//!
//! The family is cut out by four quadrics `f_1..f_4` in `x0..x7` whose
//! coefficients are linear in the plane variables `[w0, w1, w2]`.  A
//! normalizer element `g` acts on the plane through its 3x3 action and on
//! the coordinates through its 8x8 action; the transformed quadrics must be
//! exact linear combinations of the original ones.  [`verify_symmetry`]
//! solves for that unique 4x4 coefficient matrix `R(g)` from the full
//! overdetermined system of monomial identities and errors out if the
//! system is inconsistent — which is precisely the symptom of normalizing
//! the plane action with a wrong scalar.

use algebra_core::mat::solve_unique;
use algebra_core::{qq, Cyc16, Mat, Scalar};

use crate::error::GroupError;
use crate::group::NormalizerElement;
use crate::poly::{PolyW, NVARS};

/// The four defining quadrics
/// `f_1 = (w0/2)(x0^2 + x4^2) + w1 (x1 x7 + x3 x5) + w2 x2 x6` and its three
/// shifts under `x_i -> x_{i-1}`.
pub fn defining_quadrics() -> [PolyW; 4] {
    let half_w0 = PolyW::w(0).scale(&Cyc16::from_q(&qq(1, 2)));
    let w1 = PolyW::w(1);
    let w2 = PolyW::w(2);
    let f = |a: usize, b: usize, c: usize, d: usize, e: usize, g: usize| {
        // (w0/2)(x_a^2 + x_b^2) + w1 (x_c x_d + x_e x_g) + w2 x_h x_k is
        // assembled by the caller passing the index pattern; h,k follow from
        // the pattern by the same shift.
        let sq = PolyW::x(a).pow(2).add(&PolyW::x(b).pow(2));
        let bil = PolyW::x(c)
            .mul(&PolyW::x(d))
            .add(&PolyW::x(e).mul(&PolyW::x(g)));
        half_w0.mul(&sq).add(&w1.mul(&bil))
    };
    let f1 = f(0, 4, 1, 7, 3, 5).add(&w2.mul(&PolyW::x(2).mul(&PolyW::x(6))));
    let f2 = f(1, 5, 2, 0, 4, 6).add(&w2.mul(&PolyW::x(3).mul(&PolyW::x(7))));
    let f3 = f(2, 6, 3, 1, 5, 7).add(&w2.mul(&PolyW::x(4).mul(&PolyW::x(0))));
    let f4 = f(3, 7, 4, 2, 6, 0).add(&w2.mul(&PolyW::x(5).mul(&PolyW::x(1))));
    [f1, f2, f3, f4]
}

/// Applies a normalizer element to a polynomial: substitutes
/// `w -> plane(g) . w` and `x -> linear(g) . x` simultaneously.
pub fn apply_element(g: &NormalizerElement, p: &PolyW) -> PolyW {
    let mut subs: [PolyW; NVARS] = PolyW::identity_subs();
    for a in 0..3 {
        let mut form = PolyW::zero();
        for b in 0..3 {
            form = form.add(&PolyW::w(b).scale(g.plane.at(a, b)));
        }
        subs[a] = form;
    }
    for i in 0..8 {
        let mut form = PolyW::zero();
        for j in 0..8 {
            form = form.add(&PolyW::x(j).scale(g.linear.at(i, j)));
        }
        subs[3 + i] = form;
    }
    p.substitute(&subs)
}

/// Solves for the unique 4x4 matrix `R(g)` with
/// `f_i(plane(g).w, linear(g).x) = sum_j R(g)_{ij} f_j(w, x)` as exact
/// polynomials.  Errors if the overdetermined monomial system is
/// inconsistent, which signals an incompatible plane normalization.
pub fn verify_symmetry(g: &NormalizerElement) -> Result<Mat<Cyc16>, GroupError> {
    let fs = defining_quadrics();
    let transformed: Vec<PolyW> = fs.iter().map(|f| apply_element(g, f)).collect();

    // Collect the union of monomial supports of the original quadrics and
    // each transformed one; every monomial contributes one linear equation
    // for the four unknowns of that row.
    let mut rows_out: Vec<Vec<Cyc16>> = Vec::with_capacity(4);
    for ti in &transformed {
        let mut support: std::collections::BTreeSet<[u8; NVARS]> = std::collections::BTreeSet::new();
        for f in &fs {
            support.extend(f.iter().map(|(e, _)| *e));
        }
        support.extend(ti.iter().map(|(e, _)| *e));

        let mut a_rows = Vec::with_capacity(support.len());
        let mut b = Vec::with_capacity(support.len());
        for e in &support {
            a_rows.push(fs.iter().map(|f| f.coeff(e)).collect::<Vec<_>>());
            b.push(ti.coeff(e));
        }
        let a = Mat::from_rows(a_rows);
        let c = solve_unique(&a, &b)
            .map_err(|err| GroupError::SymmetryUnsolvable(format!("{err}")))?;
        rows_out.push(c);
    }
    Ok(Mat::from_rows(rows_out))
}

/// The expected induced matrix of the cyclic shift: the 4x4 cyclic
/// permutation sending `f_1 -> f_4 -> f_3 -> f_2 -> f_1`... i.e. rows
/// `(e4, e1, e2, e3)`.
pub fn expected_r_sigma() -> Mat<Cyc16> {
    let o = Cyc16::from_q(&algebra_core::qi(1));
    let z = Cyc16::new_zero;
    Mat::from_rows(vec![
        vec![z(), z(), z(), o.clone()],
        vec![o.clone(), z(), z(), z()],
        vec![z(), o.clone(), z(), z()],
        vec![z(), z(), o, z()],
    ])
}

/// The expected induced matrix of the diagonal twist:
/// `diag(1, xi^6, xi^4, xi^2)`.
pub fn expected_r_tau() -> Mat<Cyc16> {
    Mat::from_fn(4, 4, |i, j| {
        if i == j {
            Cyc16::xi_pow((8 - 2 * i as i64) % 8)
        } else {
            Cyc16::new_zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrics_shift_cyclically() {
        // Applying sigma to f_2 must give exactly f_1.
        let fs = defining_quadrics();
        let s = NormalizerElement::sigma();
        assert_eq!(apply_element(&s, &fs[1]), fs[0]);
    }

    #[test]
    fn identity_symmetry_is_identity() {
        let r = verify_symmetry(&NormalizerElement::identity()).unwrap();
        assert_eq!(r, Mat::identity(4));
    }

    #[test]
    fn shift_and_twist_have_expected_induced_matrices() {
        let r_sigma = verify_symmetry(&NormalizerElement::sigma()).unwrap();
        assert_eq!(r_sigma, expected_r_sigma());
        let r_tau = verify_symmetry(&NormalizerElement::tau()).unwrap();
        assert_eq!(r_tau, expected_r_tau());
    }

    #[test]
    fn wrong_plane_action_is_rejected() {
        // Pairing the Fourier coordinate action with the trivial plane
        // action leaves no 4x4 matrix solving the symmetry system.
        let mut s = NormalizerElement::s();
        s.plane = Mat::identity(3);
        assert!(matches!(
            verify_symmetry(&s),
            Err(GroupError::SymmetryUnsolvable(_))
        ));
    }
}

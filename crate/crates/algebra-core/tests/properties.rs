//! Property suites for the exact-arithmetic substrate: ring axioms on random
//! small series, functional-calculus round trips, and field axioms in the
//! cyclotomic scalar.  These are independent of any golden data.

use algebra_core::{invert_pair, parse_q, qq, BiSeries, Cyc16, QSeries, Scalar, Substitution, Q};
use proptest::prelude::*;

type BQ = BiSeries<Q>;

const W: (u32, u32) = (6, 5);

/// A small random rational with bounded numerator and denominator.
fn arb_q() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| qq(n, d))
}

/// A sparse random bivariate series within the test window.
fn arb_biseries() -> impl Strategy<Value = BQ> {
    proptest::collection::vec(((0u32..=4, 0u32..=3), arb_q()), 0..6).prop_map(|terms| {
        let mut s = BQ::zero_window(W);
        for ((i, j), c) in terms {
            s.add_to(i, j, &c);
        }
        s
    })
}

/// A random univariate series of fixed truncation.
fn arb_qseries() -> impl Strategy<Value = QSeries> {
    proptest::collection::vec(arb_q(), 1..8).prop_map(|cs| QSeries::from_coeffs(cs, 10))
}

/// A random cyclotomic element with small coefficients.
fn arb_cyc() -> impl Strategy<Value = Cyc16> {
    proptest::collection::vec(arb_q(), 8).prop_map(|cs| {
        let mut e = Cyc16::new_zero();
        for (k, c) in cs.into_iter().enumerate() {
            e.c[k] = c;
        }
        e
    })
}

fn norm(s: &BQ) -> BQ {
    s.truncate_to(W).with_window(W)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn biseries_mul_commutative(a in arb_biseries(), b in arb_biseries()) {
        prop_assert_eq!(norm(&a.mul(&b)), norm(&b.mul(&a)));
    }

    #[test]
    fn biseries_mul_associative(a in arb_biseries(), b in arb_biseries(), c in arb_biseries()) {
        prop_assert_eq!(norm(&a.mul(&b).mul(&c)), norm(&a.mul(&b.mul(&c))));
    }

    #[test]
    fn biseries_distributive(a in arb_biseries(), b in arb_biseries(), c in arb_biseries()) {
        prop_assert_eq!(
            norm(&a.mul(&b.add(&c))),
            norm(&a.mul(&b).add(&a.mul(&c)))
        );
    }

    #[test]
    fn biseries_div_mul_round_trip(a in arb_biseries(), b in arb_biseries()) {
        // Make b a unit: force constant term 1.
        let mut b = b;
        b.set(0, 0, algebra_core::qi(1));
        let q = a.div(&b).unwrap();
        prop_assert_eq!(norm(&q.mul(&b)), norm(&a));
    }

    #[test]
    fn biseries_exp_log_round_trips(f in arb_biseries()) {
        let mut f = f;
        f.set(0, 0, algebra_core::qi(0));
        let e = f.exp().unwrap();
        prop_assert_eq!(e.log().unwrap(), f.clone());
        // And the other direction on the unit 1 + f.
        let unit = f.add_constant(&algebra_core::qi(1));
        prop_assert_eq!(unit.log().unwrap().exp().unwrap(), unit);
    }

    #[test]
    fn biseries_theta_leibniz(a in arb_biseries(), b in arb_biseries()) {
        // theta(ab) = theta(a) b + a theta(b).
        let lhs = a.mul(&b).theta1();
        let rhs = a.theta1().mul(&b).add(&a.mul(&b.theta1()));
        prop_assert_eq!(norm(&lhs), norm(&rhs));
    }

    #[test]
    fn invert_pair_round_trips(f in arb_biseries(), g in arb_biseries()) {
        // u = x (1 + x f), v = y (1 + y g): guaranteed unit shapes.
        let xf = BQ::monomial(algebra_core::qi(1), 1, 0).mul(&f);
        let yg = BQ::monomial(algebra_core::qi(1), 0, 1).mul(&g);
        let u = BQ::monomial(algebra_core::qi(1), 1, 0)
            .mul(&xf.add_constant(&algebra_core::qi(1)));
        let v = BQ::monomial(algebra_core::qi(1), 0, 1)
            .mul(&yg.add_constant(&algebra_core::qi(1)));
        let (x, y) = invert_pair(&u, &v, W).unwrap();
        let mut sub = Substitution::new(x, y, W).unwrap();
        let q1 = sub.apply(&u.truncate_to((W.0 + 1, W.1 + 1))).unwrap();
        let q2 = sub.apply(&v.truncate_to((W.0 + 1, W.1 + 1))).unwrap();
        prop_assert_eq!(norm(&q1), norm(&BQ::monomial(algebra_core::qi(1), 1, 0)));
        prop_assert_eq!(norm(&q2), norm(&BQ::monomial(algebra_core::qi(1), 0, 1)));
    }

    #[test]
    fn qseries_ring_and_explog(a in arb_qseries(), b in arb_qseries(), c in arb_qseries()) {
        let t = 10u32;
        prop_assert_eq!(
            a.mul(&b).mul(&c).truncate(t),
            a.mul(&b.mul(&c)).truncate(t)
        );
        let mut z = a.clone();
        z.set_coeff(0, algebra_core::qi(0));
        prop_assert_eq!(z.exp().unwrap().log().unwrap(), z);
    }

    #[test]
    fn cyclotomic_field_axioms(a in arb_cyc(), b in arb_cyc(), c in arb_cyc()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !Scalar::is_zero(&a) {
            let inv = a.inv().unwrap();
            prop_assert_eq!(a.mul(&inv), Cyc16::one());
        }
    }

    #[test]
    fn rational_canonical_round_trip(q in arb_q()) {
        let s = algebra_core::fmt_q(&q);
        prop_assert_eq!(parse_q(&s).unwrap(), q);
    }
}

#[test]
fn substitution_reuse_matches_one_shot() {
    // Pulling two series through one cached substitution agrees with two
    // independent substitutions.
    let w = (6u32, 5u32);
    let x_sub = BQ::poly_q(&[(1, 0, 1, 1), (2, 0, 3, 1), (1, 1, -1, 2)]).with_window(w);
    let y_sub = BQ::poly_q(&[(0, 1, 1, 1), (1, 1, 2, 1)]).with_window(w);
    let f = BQ::poly_q(&[(0, 0, 2, 1), (1, 2, 5, 3)]).with_window(w);
    let g = BQ::poly_q(&[(2, 1, -7, 2), (3, 0, 1, 1)]).with_window(w);
    let mut sub = Substitution::new(x_sub.clone(), y_sub.clone(), w).unwrap();
    let f1 = sub.apply(&f).unwrap();
    let g1 = sub.apply(&g).unwrap();
    assert_eq!(f1, f.substitute(&x_sub, &y_sub).unwrap());
    assert_eq!(g1, g.substitute(&x_sub, &y_sub).unwrap());
}

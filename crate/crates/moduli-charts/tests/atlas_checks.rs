//! Integration checks for the chart atlas: mutual inverses, involutions,
//! discriminant transformation laws, Jacobians, and registry data.

use algebra_core::{qq, BiSeries, Q};
use moduli_charts::{
    all_charts, chart, pull_rational, pull_series, registry_json, transition, transition_jacobian,
    ChartError, ChartName, RatFunc,
};
use proptest::prelude::*;

fn poly(terms: &[(u32, u32, i64, i64)]) -> BiSeries<Q> {
    BiSeries::poly_q(terms)
}

#[test]
fn every_chart_round_trips_through_the_base() {
    for spec in all_charts() {
        let fwd_then_back = spec.from_base.compose(&spec.to_base);
        let back_then_fwd = spec.to_base.compose(&spec.from_base);
        assert!(
            fwd_then_back.is_identity(),
            "chart {}: from_base ∘ to_base is not the identity",
            spec.name
        );
        assert!(
            back_then_fwd.is_identity(),
            "chart {}: to_base ∘ from_base is not the identity",
            spec.name
        );
    }
}

#[test]
fn the_infinity_chart_map_is_an_involution() {
    let tilde = chart(ChartName::ATilde);
    assert!(tilde.from_base.compose(&tilde.from_base).is_identity());
    // The same holds for the affine flip onto A′.
    let prime = chart(ChartName::APrime);
    assert!(prime.from_base.compose(&prime.from_base).is_identity());
}

#[test]
fn principal_discriminant_pulls_to_b_chart() {
    let dis0 = chart(ChartName::A).discriminant("dis0").unwrap();
    let pulled = pull_series(ChartName::A, ChartName::B, &dis0.poly).unwrap();
    let disb0 = chart(ChartName::B).discriminant("disB0").unwrap();
    // The pull-back is z₁⁴·disB₀ up to the constant (8z₁)⁴/z₁⁴ = 2¹².
    let expected = disb0.poly.shift(4, 0).scale(&qq(4096, 1));
    assert!(pulled.sub(&expected).is_zero());
}

#[test]
fn remaining_discriminants_pull_to_b_chart() {
    let b = chart(ChartName::B);
    let cases = [
        ("dis1", "disB1", qq(2, 1)),
        ("dis2", "disB2", qq(2, 1)),
    ];
    for (a_label, b_label, factor) in cases {
        let src = chart(ChartName::A).discriminant(a_label).unwrap();
        let pulled = pull_series(ChartName::A, ChartName::B, &src.poly).unwrap();
        let expected = b.discriminant(b_label).unwrap().poly.scale(&factor);
        assert!(
            pulled.sub(&expected).is_zero(),
            "{a_label} does not pull back to {factor}·{b_label}"
        );
    }
    // dis₃ = 1−4x collapses onto the coordinate line: 8z₁.
    let dis3 = chart(ChartName::A).discriminant("dis3").unwrap();
    let pulled = pull_series(ChartName::A, ChartName::B, &dis3.poly).unwrap();
    assert!(pulled.sub(&poly(&[(1, 0, 8, 1)])).is_zero());
    // The base coordinate x itself becomes (1/4)·disB₃.
    let x = poly(&[(1, 0, 1, 1)]);
    let pulled = pull_series(ChartName::A, ChartName::B, &x).unwrap();
    let expected = b.discriminant("disB3").unwrap().poly.scale(&qq(1, 4));
    assert!(pulled.sub(&expected).is_zero());
}

#[test]
fn base_to_b_jacobian_is_a_monomial() {
    let jac = transition_jacobian(ChartName::A, ChartName::B);
    // ∂(x,y)/∂(z₁,z₂) = (−2)·(32z₁⁴) = −64z₁⁴.
    assert_eq!(jac, RatFunc::from_terms(&[(4, 0, -64, 1)]));
}

#[test]
fn base_to_c_jacobian_is_a_monomial() {
    let jac = transition_jacobian(ChartName::A, ChartName::C);
    // ∂(x,y)/∂(s₁,s₂) = 2·8s₁ = 16s₁.
    assert_eq!(jac, RatFunc::from_terms(&[(1, 0, 16, 1)]));
}

#[test]
fn degeneration_invariant_survives_the_affine_flip() {
    // y(1+4x+y) keeps its shape in the flipped chart.
    let invariant = poly(&[(0, 1, 1, 1)]).mul(&poly(&[(0, 0, 1, 1), (1, 0, 4, 1), (0, 1, 1, 1)]));
    let pulled = pull_series(ChartName::A, ChartName::APrime, &invariant).unwrap();
    assert!(pulled.sub(&invariant).is_zero());
}

#[test]
fn all_four_discriminants_keep_their_shape_in_the_flipped_chart() {
    for label in ["dis0", "dis1", "dis2", "dis3"] {
        let d = chart(ChartName::A).discriminant(label).unwrap();
        let pulled = pull_series(ChartName::A, ChartName::APrime, &d.poly).unwrap();
        let expected = if label == "dis1" {
            // 1+4x+y pulls back to −y₁: the flip exchanges this factor with
            // the coordinate line y = 0 (both carry exponent −1).
            poly(&[(0, 1, -1, 1)])
        } else {
            d.poly.clone()
        };
        assert!(
            pulled.sub(&expected).is_zero(),
            "{label} changes shape under the affine flip"
        );
    }
    // Conversely the coordinate line y = 0 pulls back to the dis₁ shape.
    let y = poly(&[(0, 1, 1, 1)]);
    let pulled = pull_series(ChartName::A, ChartName::APrime, &y).unwrap();
    let expected = poly(&[(0, 0, -1, 1), (1, 0, -4, 1), (0, 1, -1, 1)]);
    assert!(pulled.sub(&expected).is_zero());
}

#[test]
fn discriminants_repeat_their_shape_at_infinity() {
    // Under (x, y) ↦ (1/(16x̃), ỹ/(4x̃)) each discriminant reproduces its own
    // polynomial in the tilde coordinates divided by a monomial:
    //   dis₀ ↦ dis₀(x̃,ỹ)/(256x̃⁴), dis₁ ↦ dis₁/(4x̃),
    //   dis₂ ↦ dis₂/(4x̃),          dis₃ ↦ −dis₃/(4x̃).
    let expectations: [(&str, i64, i64, u32); 4] = [
        ("dis0", 1, 256, 4),
        ("dis1", 1, 4, 1),
        ("dis2", 1, 4, 1),
        ("dis3", -1, 4, 1),
    ];
    for (label, sign_num, denom, pole_order) in expectations {
        let d = chart(ChartName::A).discriminant(label).unwrap();
        let pulled = pull_rational(ChartName::A, ChartName::ATilde, &d.poly);
        let expected = RatFunc::from_poly(d.poly.clone())
            .mul(&RatFunc::constant_q(sign_num, denom))
            .div(&RatFunc::var1().pow(pole_order as i64));
        assert_eq!(pulled, expected, "{label} does not repeat at infinity");
    }
}

#[test]
fn discriminant_lookup_matches_registry() {
    let dis1 = chart(ChartName::A).discriminant("dis1").unwrap();
    assert!(dis1
        .poly
        .sub(&poly(&[(0, 0, 1, 1), (1, 0, 4, 1), (0, 1, 1, 1)]))
        .is_zero());

    let disb3 = chart(ChartName::B).discriminant("disB3").unwrap();
    assert!(disb3.poly.sub(&poly(&[(0, 0, 1, 1), (1, 0, -8, 1)])).is_zero());

    // disC₀ restricted to the axis s₂ = 0 collapses to (1−4s₁)⁴.
    let disc0 = chart(ChartName::C).discriminant("disC0").unwrap();
    let restricted: Vec<(u32, Q)> = disc0.poly.slice_second(0);
    let expected = poly(&[(0, 0, 1, 1), (1, 0, -4, 1)]).pow(4);
    for (i, c) in restricted {
        assert_eq!(c, expected.coeff(i, 0), "disC0 axis coefficient x^{i}");
    }

    assert!(chart(ChartName::C).discriminant("disB3").is_err());
}

#[test]
fn topology_constants_match_the_solution_frame() {
    let a = &chart(ChartName::A).topology;
    let b = &chart(ChartName::B).topology;
    let c = &chart(ChartName::C).topology;
    assert_eq!((a.kappa(), b.kappa(), c.kappa()), (16, 16, 8));
    assert_eq!(a.d_normalized(1, 1, 1), qq(1, 1));
    assert_eq!(b.d_normalized(1, 1, 1), qq(8, 1));
    assert_eq!(c.d_normalized(1, 1, 1), qq(2, 1));
    for t in [a, b, c] {
        assert_eq!(t.d_normalized(1, 1, 2), qq(1, 1));
        assert_eq!(t.d_normalized(1, 2, 2), qq(0, 1));
        assert_eq!(t.d_normalized(2, 2, 2), qq(0, 1));
        assert_eq!(t.chi, 0);
        assert_eq!(t.h11, 2);
    }
    assert_eq!(a.beta(1), qq(-8, 3));
    assert_eq!(b.beta(1), qq(-1, 3));
    assert_eq!(c.beta(1), qq(-2, 3));
    for t in [a, b, c] {
        assert_eq!(t.beta(2), qq(0, 1));
    }
}

#[test]
fn truncated_series_refuse_nonlocal_transitions() {
    // A truncated series at the origin cannot be re-expanded at a different
    // point: the A→B transition sends the origin to x = 1/4.
    let s = poly(&[(1, 0, 1, 1)]).truncate_to((5, 5));
    match pull_series(ChartName::A, ChartName::B, &s) {
        Err(ChartError::NonLocalTransition { component: 1, value }) => {
            assert_eq!(value, "1/4");
        }
        other => panic!("expected a non-local transition error, got {other:?}"),
    }
    // The map to infinity has a genuine pole at the origin.
    match pull_series(ChartName::A, ChartName::ATilde, &s) {
        Err(ChartError::PoleAtOrigin { component: 1 }) => {}
        other => panic!("expected a pole error, got {other:?}"),
    }
}

#[test]
fn exact_pullbacks_report_residual_denominators() {
    let dis2 = chart(ChartName::A).discriminant("dis2").unwrap();
    match pull_series(ChartName::A, ChartName::ATilde, &dis2.poly) {
        Err(ChartError::NonPolynomialPullback { denominator }) => {
            assert_eq!(denominator, "xt");
        }
        other => panic!("expected a non-polynomial pull-back error, got {other:?}"),
    }
}

#[test]
fn truncated_series_pass_through_the_identity_transition() {
    let s = poly(&[(1, 0, 3, 1), (2, 3, -7, 2)]).truncate_to((6, 6));
    let pulled = pull_series(ChartName::A, ChartName::A, &s).unwrap();
    assert!(pulled.sub(&s).is_zero());
    assert_eq!(pulled.trunc(), (6, 6));
}

#[test]
fn registry_json_lists_all_charts() {
    let v = registry_json();
    let charts = v["charts"].as_array().unwrap();
    assert_eq!(charts.len(), 5);
    let b = charts.iter().find(|c| c["name"] == "B").unwrap();
    let labels: Vec<&str> = b["discriminants"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["disB0", "disB1", "disB2", "disB3"]);
    let disb3 = &b["discriminants"][3];
    assert_eq!(disb3["polynomial"], "1 - 8*z1");
    assert_eq!(disb3["exponent"], "-19/3");
    assert_eq!(b["normalization_constant"], "1/2");
    let c = charts.iter().find(|c| c["name"] == "C").unwrap();
    assert_eq!(c["normalization_constant"], "1/2*sqrt2");
    assert_eq!(c["mirror_map_constants"][0], "i");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Pulling any exact polynomial to the flipped chart and back is lossless.
    #[test]
    fn affine_flip_round_trips_polynomials(
        terms in proptest::collection::vec((0u32..4, 0u32..4, -30i64..30), 0..6)
    ) {
        let p = BiSeries::poly(
            &terms
                .iter()
                .map(|&(i, j, n)| (i, j, qq(n, 1)))
                .collect::<Vec<_>>(),
        );
        let there = pull_series(ChartName::A, ChartName::APrime, &p).unwrap();
        let back = pull_series(ChartName::APrime, ChartName::A, &there).unwrap();
        prop_assert!(back.sub(&p).is_zero());
    }

    /// The rational pull-back to the chart at infinity inverts exactly.
    #[test]
    fn infinity_round_trips_rationally(
        terms in proptest::collection::vec((0u32..4, 0u32..4, -30i64..30), 1..6)
    ) {
        let p = BiSeries::poly(
            &terms
                .iter()
                .map(|&(i, j, n)| (i, j, qq(n, 1)))
                .collect::<Vec<_>>(),
        );
        let there = pull_rational(ChartName::A, ChartName::ATilde, &p);
        let t = transition(ChartName::ATilde, ChartName::A);
        let back = moduli_charts::substitute_rat(&there, &t.c1, &t.c2);
        prop_assert!(back == RatFunc::from_poly(p));
    }

    /// Chart changes A→B and back are mutually inverse on exact data that
    /// stays polynomial in both directions (monomials in y·x-powers do).
    #[test]
    fn b_chart_round_trips_rationally(
        terms in proptest::collection::vec((0u32..4, 0u32..4, -30i64..30), 1..6)
    ) {
        let p = BiSeries::poly(
            &terms
                .iter()
                .map(|&(i, j, n)| (i, j, qq(n, 1)))
                .collect::<Vec<_>>(),
        );
        let there = pull_rational(ChartName::A, ChartName::B, &p);
        let t = transition(ChartName::B, ChartName::A);
        let back = moduli_charts::substitute_rat(&there, &t.c1, &t.c2);
        prop_assert!(back == RatFunc::from_poly(p));
    }
}

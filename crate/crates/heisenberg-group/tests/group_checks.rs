//! End-to-end certification of the finite symmetry group.
//!
//! Runs the full report suite (generator relations, solved quadric
//! representation, closure orders, isotropy structure, quartic invariants,
//! degeneration identities, hyperplane permutations) and requires every
//! named check to pass.  A property test confirms that the solved quadric
//! representation is multiplicative on arbitrary short generator words, not
//! just on the ordered generator pairs covered by the suite.

use heisenberg_group::{full_suite, verify_symmetry, NormalizerElement};
use proptest::prelude::*;

#[test]
fn every_certification_passes() {
    let reports = full_suite();
    let mut failures = Vec::new();
    for report in &reports {
        if !report.passed {
            failures.push(format!("{}: {}", report.name, report.witness));
        }
    }
    assert!(
        failures.is_empty(),
        "{} of {} checks failed:\n{}",
        failures.len(),
        reports.len(),
        failures.join("\n")
    );
    assert!(reports.len() >= 40, "suite unexpectedly small: {}", reports.len());
}

fn generator(idx: u8) -> NormalizerElement {
    match idx % 4 {
        0 => NormalizerElement::sigma(),
        1 => NormalizerElement::tau(),
        2 => NormalizerElement::s(),
        _ => NormalizerElement::t(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// `R(g h) = R(g) R(h)` for words of length up to four in the
    /// generators, with both sides produced by the linear solver.
    #[test]
    fn quadric_representation_is_multiplicative(word in prop::collection::vec(0u8..4, 1..5)) {
        let mut product = NormalizerElement::identity();
        let mut expected = verify_symmetry(&product).unwrap();
        for idx in word {
            let g = generator(idx);
            let r = verify_symmetry(&g).unwrap();
            product = product.mul(&g);
            expected = expected.mul(&r).unwrap();
        }
        let solved = verify_symmetry(&product).unwrap();
        prop_assert_eq!(solved, expected);
    }
}

//! Construction of the operator pair `(𝒟₂, 𝒟₃)` in every boundary chart.
//!
//! The pair is known in closed form in the plain affine chart `A`: `𝒟₂` has
//! order two, `𝒟₃` order three, and all coefficients are small polynomials
//! in `(x, y)` — they are transcribed literally in [`tables_plain`], factor
//! by factor, so each line can be checked against its printed form at a
//! glance.
//!
//! Every other chart is reached from `A` through the atlas:
//!
//! - the affine flip chart (`A′`) carries the *same* tables verbatim: the
//!   transformed order-two operator is exactly proportional to the renamed
//!   one, and the order-three operators generate the same left module once
//!   `θ` multiples of the order-two generator are admitted — both facts are
//!   certified by exact rational-operator identities before the tables are
//!   handed out;
//! - `B`, `C` and the infinity chart conjugate the pair through the chain
//!   rule on the Euler frame ([`frame_thetas`]): `θ_u` and `θ_v` of the new
//!   chart are solved for `θ_x, θ_y`, the coefficients are pulled back along
//!   the chart map, and the rational intermediate is cleared to polynomial
//!   coefficients in certified fashion.
//!
//! The transformed operators annihilate exactly the pulled-back local
//! solutions, which the solver tests verify independently.

use std::collections::BTreeMap;

use algebra_core::{BiSeries, Q};
use moduli_charts::{chart, substitute_poly, ChartName, RatFunc};
use once_cell::sync::Lazy;

use crate::error::PFError;
use crate::operator::{OperatorRat, PFOperator};

type P = BiSeries<Q>;

/// `c₀ + c₁x` as an exact polynomial.
fn l(c0: i64, c1: i64) -> P {
    BiSeries::poly_q(&[(0, 0, c0, 1), (1, 0, c1, 1)])
}

/// `c₀ + c₁x + c₂x²` as an exact polynomial.
fn quad(c0: i64, c1: i64, c2: i64) -> P {
    BiSeries::poly_q(&[(0, 0, c0, 1), (1, 0, c1, 1), (2, 0, c2, 1)])
}

/// `c·y^k` as an exact polynomial.
fn yk(c: i64, k: u32) -> P {
    BiSeries::poly_q(&[(0, k, c, 1)])
}

/// The order-two and order-three operators of the plain affine chart, with
/// each coefficient assembled from the same factors as its printed closed
/// form (no pre-expanded constants).
pub fn tables_plain() -> (PFOperator, PFOperator) {
    let x = BiSeries::poly_q(&[(1, 0, 1, 1)]);
    let y = yk(1, 1);
    let y2 = yk(1, 2);

    // Order two: Σ p_{ij} θ₁^i θ₂^j.
    let p00 = x.scale_q(&algebra_core::qi(16)).mul(&l(1, -12)).mul(&y2);
    let p01 = quad(1, -40, 208).neg().mul(&y2);
    let p10 = quad(1, 8, -112).scale_q(&algebra_core::qi(2)).mul(&y2);
    let p11 = x.scale_q(&algebra_core::qi(32)).mul(&l(1, -4)).mul(&y2);
    let p20 = l(1, -4).scale_q(&algebra_core::qi(4)).mul(&l(1, 4)).mul(&y2);
    let p02 = l(1, -4)
        .neg()
        .mul(&y)
        .mul(&l(1, -4).pow(2).add(&l(1, -12).mul(&y)));
    let d2 = PFOperator::new([
        ((0, 0), p00),
        ((0, 1), p01),
        ((1, 0), p10),
        ((1, 1), p11),
        ((2, 0), p20),
        ((0, 2), p02),
    ]);

    // Order three: Σ q_{ij} θ₁^i θ₂^j.
    let q00 = x
        .mul(&y)
        .scale_q(&algebra_core::qi(16))
        .mul(&l(1, -36).add(&yk(-3, 1)));
    let q01 = y.mul(&l(1, -36).mul(&l(1, 60)).sub(&l(7, -292).mul(&y)));
    let q20 = l(1, -4).scale_q(&algebra_core::qi(-20)).mul(&y2);
    let q21 = q20.clone();
    let q11 = y
        .scale_q(&algebra_core::qi(-2))
        .mul(&l(1, -4).mul(&l(1, -36)).scale_q(&algebra_core::qi(3)).add(&l(9, -76).mul(&y)));
    let q10 = y
        .scale_q(&algebra_core::qi(-2))
        .mul(&l(1, -4).mul(&l(1, -36)).add(&l(7, -68).mul(&y)));
    let q12 = l(1, -4)
        .scale_q(&algebra_core::qi(-2))
        .mul(&l(1, 4).add(&yk(3, 1)).mul(&l(1, -36)).add(&yk(2, 2)));
    let q02 = l(1, -36)
        .neg()
        .mul(&l(1, -4).mul(&l(1, 12)).sub(&l(1, 28).scale_q(&algebra_core::qi(3)).mul(&y)))
        .add(&l(7, -200).scale_q(&algebra_core::qi(2)).mul(&y2));
    let q03 = l(1, -36)
        .scale_q(&algebra_core::qi(2))
        .mul(&quad(1, 20, 32))
        .add(&l(3, 20).mul(&l(3, -76)).mul(&y))
        .add(&l(7, -156).mul(&y2));
    let d3 = PFOperator::new([
        ((0, 0), q00),
        ((0, 1), q01),
        ((2, 0), q20),
        ((2, 1), q21),
        ((1, 1), q11),
        ((1, 0), q10),
        ((1, 2), q12),
        ((0, 2), q02),
        ((0, 3), q03),
    ]);
    (d2, d3)
}

/// Express the plain-chart Euler derivatives `(θ_x, θ_y)` in the Euler frame
/// of another chart: invert the 2×2 chain-rule matrix of the chart-to-base
/// map.  Each returned operator has pure order one with rational-function
/// coefficients in the chart's own coordinates.
pub fn frame_thetas(name: ChartName) -> (OperatorRat, OperatorRat) {
    let spec = chart(name);
    let cx = &spec.to_base.c1;
    let cy = &spec.to_base.c2;
    let theta = |f: &RatFunc, which: u8| -> RatFunc {
        match which {
            1 => RatFunc::var1().mul(&f.d1()),
            _ => RatFunc::var2().mul(&f.d2()),
        }
    };
    // θ_u = m11 θ_x + m12 θ_y,  θ_v = m21 θ_x + m22 θ_y.
    let m11 = theta(cx, 1).div(cx);
    let m12 = theta(cy, 1).div(cy);
    let m21 = theta(cx, 2).div(cx);
    let m22 = theta(cy, 2).div(cy);
    let det = m11.mul(&m22).sub(&m12.mul(&m21));
    assert!(!det.is_zero(), "chart frames are invertible away from the axes");
    let tu = OperatorRat::theta(1, 0);
    let tv = OperatorRat::theta(0, 1);
    let theta_x = tu
        .scale_left(&m22.div(&det))
        .add(&tv.scale_left(&m12.div(&det).neg()));
    let theta_y = tu
        .scale_left(&m21.div(&det).neg())
        .add(&tv.scale_left(&m11.div(&det)));
    (theta_x, theta_y)
}

/// Conjugate a plain-chart operator into another chart without clearing
/// denominators: coefficients are pulled back along the chart map and the
/// `θ` monomials are rewritten through [`frame_thetas`].  The raw form is
/// what the reduction identities of the affine flip are stated in.
pub fn raw_transform(op: &PFOperator, name: ChartName) -> OperatorRat {
    let spec = chart(name);
    let (tx, ty) = frame_thetas(name);
    let order = op.order() as usize;
    // powers[i][j] = θ_x^i ∘ θ_y^j in the new frame.
    let mut powers: Vec<Vec<OperatorRat>> = Vec::with_capacity(order + 1);
    for i in 0..=order {
        let mut row = Vec::with_capacity(order + 1 - i);
        for j in 0..=(order - i) {
            let entry = if i == 0 && j == 0 {
                OperatorRat::identity()
            } else if i == 0 {
                ty.compose(&row[j - 1])
            } else {
                tx.compose(&powers[i - 1][j])
            };
            row.push(entry);
        }
        powers.push(row);
    }
    let mut out = OperatorRat::zero();
    for (&(i, j), p) in op.iter() {
        let coeff = substitute_poly(p, &spec.to_base.c1, &spec.to_base.c2);
        out = out.add(&powers[i as usize][j as usize].scale_left(&coeff));
    }
    out
}

/// Certify that the affine-flip chart carries the plain tables verbatim and
/// hand them back.  With `R₂, R₃` the raw transformed operators in the flip
/// coordinates `(x₁, y₁)` and `P₂, P₃` their polynomial clearings:
///
/// - renamed `𝒟₂` equals `(y₁² / (1+4x₁+y₁)²)·R₂` exactly — an identity of
///   rational-coefficient operators, checked slot by slot — so the order-two
///   generators are proportional and have identical kernels;
/// - the Frobenius solver run on `(P₂, P₃)` reproduces, coefficient for
///   coefficient and log part for log part, the six canonical solutions of
///   the plain tables.
///
/// The transformed pair annihilates exactly the pullbacks of the plain-chart
/// periods, so the second check pins the flip chart's local solutions to the
/// plain-chart ones verbatim and justifies reusing the tables.
fn build_flip() -> Result<(PFOperator, PFOperator), PFError> {
    let (d2, d3) = tables_plain();
    let renamed2 = OperatorRat::from_pf(&d2);
    let r2 = raw_transform(&d2, ChartName::APrime);
    let r3 = raw_transform(&d3, ChartName::APrime);
    let spec = chart(ChartName::APrime);

    let y1 = RatFunc::var2();
    let disc = RatFunc::from_terms(&[(0, 0, 1, 1), (1, 0, 4, 1), (0, 1, 1, 1)]);
    let ratio = y1.pow(2).div(&disc.pow(2));
    if !r2.scale_left(&ratio).eq_exact(&renamed2) {
        return Err(PFError::CertificationFailed {
            detail: "flip chart: order-two operators are not proportional".into(),
        });
    }

    let p2 = r2.clear_denominators(spec.vars)?;
    let p3 = r3.clear_denominators(spec.vars)?;
    let window = crate::solve::MIN_TRUNCATION;
    let transformed = crate::solve::solve_frobenius(&p2, &p3, &spec.topology, window)?;
    let plain = crate::solve::solve_frobenius(&d2, &d3, &spec.topology, window)?;
    if transformed != plain {
        return Err(PFError::CertificationFailed {
            detail: "flip chart: transformed solutions differ from the plain-chart solutions"
                .into(),
        });
    }
    Ok((d2, d3))
}

/// Transform the plain pair into a chart and clear to polynomial
/// coefficients.
fn build_transformed(name: ChartName) -> Result<(PFOperator, PFOperator), PFError> {
    let (d2, d3) = tables_plain();
    let vars = chart(name).vars;
    let t2 = raw_transform(&d2, name).clear_denominators(vars)?;
    let t3 = raw_transform(&d3, name).clear_denominators(vars)?;
    Ok((t2, t3))
}

static OPERATORS: Lazy<BTreeMap<ChartName, (PFOperator, PFOperator)>> = Lazy::new(|| {
    let mut map = BTreeMap::new();
    map.insert(ChartName::A, tables_plain());
    map.insert(
        ChartName::APrime,
        build_flip().expect("the flip-chart reduction identities hold"),
    );
    for name in [ChartName::B, ChartName::C, ChartName::ATilde] {
        map.insert(
            name,
            build_transformed(name)
                .expect("transformed operators clear to polynomial coefficients"),
        );
    }
    map
});

/// The operator pair `(𝒟₂, 𝒟₃)` of a boundary chart, with exact polynomial
/// coefficients in the chart's own coordinates.  Construction runs once per
/// process; repeated calls are lookups.
pub fn build_operators(name: ChartName) -> (&'static PFOperator, &'static PFOperator) {
    let (d2, d3) = &OPERATORS[&name];
    (d2, d3)
}

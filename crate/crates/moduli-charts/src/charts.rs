//! The chart registry: five boundary charts with exact maps and constants.
//!
//! The base affine coordinates are `(x, y)`; the five charts cover the
//! boundary points where the period lattice degenerates maximally:
//!
//! | chart | location in `(x, y)`           | chart coordinates          |
//! |-------|--------------------------------|----------------------------|
//! | `A`   | `(0, 0)`                       | `(x, y)` itself            |
//! | `A′`  | `(0, −1)`                      | `(x₁, y₁) = (x, −4x−y−1)`  |
//! | `Ã`   | `x = ∞` on `y/x` finite        | `(1/(16x), y/(4x))`        |
//! | `B`   | `(1/4, 0)`                     | `((1−4x)/8, 2⁷y/(1−4x)⁴)`  |
//! | `C`   | `(−1/4, 0)`                    | `((4x+1)/8, y/(4x+1))`     |
//!
//! Each [`ChartSpec`] carries, besides the two exact rational maps:
//!
//! - the ordered discriminant factorization local to the chart, with the
//!   rational exponent each factor contributes to the genus-one potential;
//! - the exponents of the two coordinate lines in that same potential;
//! - the period normalization constant `N_P` (rational times a power of √2)
//!   and the two mirror-map constants `C₁`, `C₂` (Gaussian rationals);
//! - the intersection numbers, second Chern classes, Euler number and Picard
//!   rank of the associated smooth Calabi-Yau threefold in its natural
//!   divisor frame.
//!
//! The registry is immutable and built once; concurrent reads are safe.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use algebra_core::{qq, BiSeries, GaussQ, Q, Scalar};
use once_cell::sync::Lazy;

use crate::error::ChartError;
use crate::ratfunc::{RatFunc, RatMap};

/// Names of the five boundary charts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChartName {
    /// The chart at the origin of `(x, y)`.
    A,
    /// The chart at `(0, −1)`, exchanged with `A` by an affine symmetry.
    APrime,
    /// The chart at infinity, image of `A` under the involution
    /// `(x, y) ↦ (1/(16x), y/(4x))`.
    ATilde,
    /// The blow-up chart at `(1/4, 0)`.
    B,
    /// The blow-up chart at `(−1/4, 0)`.
    C,
}

impl ChartName {
    /// All charts in registry order.
    pub const ALL: [ChartName; 5] = [
        ChartName::A,
        ChartName::APrime,
        ChartName::ATilde,
        ChartName::B,
        ChartName::C,
    ];

    /// ASCII identifier, safe for file names and CLI flags.
    pub fn ascii(self) -> &'static str {
        match self {
            ChartName::A => "A",
            ChartName::APrime => "A-prime",
            ChartName::ATilde => "A-tilde",
            ChartName::B => "B",
            ChartName::C => "C",
        }
    }
}

impl fmt::Display for ChartName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ChartName::A => "A",
            ChartName::APrime => "A′",
            ChartName::ATilde => "Ã",
            ChartName::B => "B",
            ChartName::C => "C",
        };
        f.write_str(s)
    }
}

impl FromStr for ChartName {
    type Err = ChartError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s
            .trim()
            .chars()
            .filter(|c| !matches!(c, ' ' | '-' | '_'))
            .collect::<String>()
            .to_ascii_lowercase();
        match norm.as_str() {
            "a" => Ok(ChartName::A),
            "a'" | "a\u{2032}" | "aprime" | "ap" => Ok(ChartName::APrime),
            "a~" | "\u{e3}" | "a\u{303}" | "atilde" | "at" => Ok(ChartName::ATilde),
            "b" => Ok(ChartName::B),
            "c" => Ok(ChartName::C),
            _ => Err(ChartError::UnknownChart(s.to_string())),
        }
    }
}

/// An exact scalar of the form `r · (√2)^e` with `r` rational and
/// `e ∈ {0, 1}` after normalization (even powers of √2 fold into `r`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootTwo {
    rational: Q,
    sqrt2: bool,
}

impl RootTwo {
    /// Build `r · (√2)^e` for any integer exponent `e`.
    pub fn new(rational: Q, sqrt2_exp: i64) -> Self {
        let folded = sqrt2_exp.div_euclid(2);
        let rem = sqrt2_exp.rem_euclid(2);
        let mut r = rational;
        if folded >= 0 {
            for _ in 0..folded {
                r *= qq(2, 1);
            }
        } else {
            for _ in 0..(-folded) {
                r *= qq(1, 2);
            }
        }
        RootTwo {
            rational: r,
            sqrt2: rem == 1,
        }
    }

    /// A plain rational value.
    pub fn from_q(r: Q) -> Self {
        RootTwo {
            rational: r,
            sqrt2: false,
        }
    }

    /// The rational part `r` of the normalized form `r · (√2)^e`.
    pub fn rational_part(&self) -> &Q {
        &self.rational
    }

    /// True when an odd power of √2 remains.
    pub fn has_sqrt2(&self) -> bool {
        self.sqrt2
    }

    /// The exact square, always rational.
    pub fn squared(&self) -> Q {
        let r2 = self.rational.clone() * self.rational.clone();
        if self.sqrt2 {
            r2 * qq(2, 1)
        } else {
            r2
        }
    }

    /// Product of two values.
    pub fn mul(&self, rhs: &RootTwo) -> Self {
        let mut r = self.rational.clone() * rhs.rational.clone();
        let mut s = false;
        match (self.sqrt2, rhs.sqrt2) {
            (true, true) => r *= qq(2, 1),
            (a, b) => s = a || b,
        }
        RootTwo {
            rational: r,
            sqrt2: s,
        }
    }

    /// Exact inverse.
    ///
    /// # Panics
    /// Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!Scalar::is_zero(&self.rational), "inverse of zero");
        if self.sqrt2 {
            // 1/(r√2) = (1/(2r))·√2.
            RootTwo {
                rational: qq(1, 1) / (self.rational.clone() * qq(2, 1)),
                sqrt2: true,
            }
        } else {
            RootTwo {
                rational: qq(1, 1) / self.rational.clone(),
                sqrt2: false,
            }
        }
    }

    /// The value as a rational number, if no √2 factor remains.
    pub fn as_q(&self) -> Option<Q> {
        if self.sqrt2 {
            None
        } else {
            Some(self.rational.clone())
        }
    }

    /// Approximate value as `f64`.
    pub fn to_f64(&self) -> f64 {
        use num::ToPrimitive;
        let r = self.rational.to_f64().unwrap_or(f64::NAN);
        if self.sqrt2 {
            r * std::f64::consts::SQRT_2
        } else {
            r
        }
    }
}

impl fmt::Display for RootTwo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sqrt2 {
            write!(f, "{}*sqrt2", self.rational)
        } else {
            write!(f, "{}", self.rational)
        }
    }
}

/// Intersection-theoretic constants of the smooth Calabi-Yau threefold
/// attached to a chart, in the divisor frame `(D₁, D₂)` matching the chart's
/// mirror coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologicalData {
    /// Triple intersections `(D₁³, D₁²D₂, D₁D₂², D₂³)`.
    pub cubic: [i64; 4],
    /// Second Chern class pairings `(c₂·D₁, c₂·D₂)`.
    pub c2: (i64, i64),
    /// Topological Euler number.
    pub chi: i64,
    /// Picard rank.
    pub h11: u32,
}

impl TopologicalData {
    /// Triple intersection `D_i·D_j·D_k` for indices in `{1, 2}`.
    pub fn triple(&self, i: u8, j: u8, k: u8) -> i64 {
        let twos = [i, j, k].iter().filter(|&&n| n == 2).count();
        self.cubic[twos]
    }

    /// The normalization `K = D₁²D₂` used by the canonical solution frame.
    pub fn kappa(&self) -> i64 {
        self.cubic[1]
    }

    /// Normalized intersection tensor `d_ijk = D_iD_jD_k / K` (so `d₁₁₂ = 1`).
    pub fn d_normalized(&self, i: u8, j: u8, k: u8) -> Q {
        qq(self.triple(i, j, k), self.kappa())
    }

    /// The constant `β_k = −c₂·D_k / 24` of the canonical solution frame.
    pub fn beta(&self, k: u8) -> Q {
        let c = if k == 1 { self.c2.0 } else { self.c2.1 };
        qq(-c, 24)
    }
}

/// One discriminant factor local to a chart.
#[derive(Debug, Clone)]
pub struct Discriminant {
    /// Label, e.g. `dis0` or `disB3`.
    pub label: &'static str,
    /// The exact polynomial in chart coordinates.
    pub poly: BiSeries<Q>,
    /// The exponent the factor contributes to the genus-one potential.
    pub exponent: Q,
}

/// Full description of one boundary chart.
#[derive(Debug, Clone)]
pub struct ChartSpec {
    /// Chart name.
    pub name: ChartName,
    /// Variable names for display, e.g. `("z1", "z2")`.
    pub vars: (&'static str, &'static str),
    /// Map from chart coordinates to the base coordinates `(x, y)`.
    pub to_base: RatMap,
    /// Inverse map from `(x, y)` to chart coordinates.
    pub from_base: RatMap,
    /// Ordered discriminant factorization with genus-one exponents.
    pub discriminants: Vec<Discriminant>,
    /// Genus-one exponents of the two coordinate lines.
    pub coord_exponents: (Q, Q),
    /// Period normalization constant `N_P`.
    pub n_p: RootTwo,
    /// First mirror-map constant `C₁`.
    pub c1: GaussQ,
    /// Second mirror-map constant `C₂`.
    pub c2: GaussQ,
    /// Intersection data of the associated threefold.
    pub topology: TopologicalData,
}

impl ChartSpec {
    /// Look up a discriminant factor by label.
    pub fn discriminant(&self, label: &str) -> Result<&Discriminant, ChartError> {
        self.discriminants
            .iter()
            .find(|d| d.label == label)
            .ok_or_else(|| ChartError::UnknownLabel {
                chart: self.name.ascii(),
                label: label.to_string(),
            })
    }
}

fn poly(terms: &[(u32, u32, i64, i64)]) -> BiSeries<Q> {
    BiSeries::poly_q(terms)
}

/// `(1−4x)⁴ − 256xy(1+4x+y)`, the principal discriminant in base coordinates.
fn dis0_base() -> BiSeries<Q> {
    let one_m_4x = poly(&[(0, 0, 1, 1), (1, 0, -4, 1)]);
    let xy256 = poly(&[(1, 1, 256, 1)]);
    let unit = poly(&[(0, 0, 1, 1), (1, 0, 4, 1), (0, 1, 1, 1)]);
    one_m_4x.pow(4).sub(&xy256.mul(&unit))
}

fn chart_a(name: ChartName, vars: (&'static str, &'static str), map: RatMap) -> ChartSpec {
    // A, A′ and Ã share the same local discriminant shapes and topological
    // data; they differ only in how their coordinates sit inside the base.
    let discriminants = vec![
        Discriminant {
            label: "dis0",
            poly: dis0_base(),
            exponent: qq(-1, 6),
        },
        Discriminant {
            label: "dis1",
            poly: poly(&[(0, 0, 1, 1), (1, 0, 4, 1), (0, 1, 1, 1)]),
            exponent: qq(-1, 1),
        },
        Discriminant {
            label: "dis2",
            poly: poly(&[(0, 0, 1, 1), (1, 0, 4, 1)]),
            exponent: qq(-2, 3),
        },
        Discriminant {
            label: "dis3",
            poly: poly(&[(0, 0, 1, 1), (1, 0, -4, 1)]),
            exponent: qq(-1, 1),
        },
    ];
    let inverse = map.clone();
    ChartSpec {
        name,
        vars,
        to_base: map,
        from_base: inverse,
        discriminants,
        coord_exponents: (qq(-19, 3), qq(-1, 1)),
        n_p: if name == ChartName::ATilde {
            RootTwo::from_q(qq(16, 1))
        } else {
            RootTwo::from_q(qq(1, 1))
        },
        c1: GaussQ::one(),
        c2: GaussQ::one(),
        topology: TopologicalData {
            cubic: [16, 16, 0, 0],
            c2: (64, 0),
            chi: 0,
            h11: 2,
        },
    }
}

fn chart_b() -> ChartSpec {
    // to_base: x = (1−8z₁)/4, y = 32 z₁⁴ z₂.
    let to_base = RatMap::new(
        RatFunc::from_terms(&[(0, 0, 1, 4), (1, 0, -2, 1)]),
        RatFunc::from_terms(&[(4, 1, 32, 1)]),
    );
    // from_base: z₁ = (1−4x)/8, z₂ = 2⁷ y/(1−4x)⁴.
    let one_m_4x = RatFunc::from_terms(&[(0, 0, 1, 1), (1, 0, -4, 1)]);
    let from_base = RatMap::new(
        one_m_4x.mul(&RatFunc::constant_q(1, 8)),
        RatFunc::from_terms(&[(0, 1, 128, 1)]).div(&one_m_4x.pow(4)),
    );
    let z2 = poly(&[(0, 1, 1, 1)]);
    let z2sq = poly(&[(0, 2, 1, 1)]);
    let disb0 = poly(&[(0, 0, 1, 1)])
        .sub(
            &poly(&[(0, 0, 1, 1), (1, 0, -4, 1)])
                .mul(&poly(&[(0, 0, 1, 1), (1, 0, -8, 1)]))
                .mul(&z2),
        )
        .sub(
            &poly(&[(4, 0, 16, 1)])
                .mul(&poly(&[(0, 0, 1, 1), (1, 0, -8, 1)]))
                .mul(&z2sq),
        );
    let discriminants = vec![
        Discriminant {
            label: "disB0",
            poly: disb0,
            exponent: qq(-1, 6),
        },
        Discriminant {
            label: "disB1",
            poly: poly(&[(0, 0, 1, 1), (1, 0, -4, 1), (4, 1, 16, 1)]),
            exponent: qq(-1, 1),
        },
        Discriminant {
            label: "disB2",
            poly: poly(&[(0, 0, 1, 1), (1, 0, -4, 1)]),
            exponent: qq(-2, 3),
        },
        Discriminant {
            label: "disB3",
            poly: poly(&[(0, 0, 1, 1), (1, 0, -8, 1)]),
            exponent: qq(-19, 3),
        },
    ];
    ChartSpec {
        name: ChartName::B,
        vars: ("z1", "z2"),
        to_base,
        from_base,
        discriminants,
        coord_exponents: (qq(-5, 3), qq(-1, 1)),
        n_p: RootTwo::from_q(qq(1, 2)),
        c1: GaussQ::one(),
        c2: GaussQ::one(),
        topology: TopologicalData {
            cubic: [128, 16, 0, 0],
            c2: (8, 0),
            chi: 0,
            h11: 2,
        },
    }
}

fn chart_c() -> ChartSpec {
    // to_base: x = 2s₁ − 1/4, y = 8 s₁ s₂.
    let to_base = RatMap::new(
        RatFunc::from_terms(&[(0, 0, -1, 4), (1, 0, 2, 1)]),
        RatFunc::from_terms(&[(1, 1, 8, 1)]),
    );
    // from_base: s₁ = (4x+1)/8, s₂ = y/(4x+1).
    let one_p_4x = RatFunc::from_terms(&[(0, 0, 1, 1), (1, 0, 4, 1)]);
    let from_base = RatMap::new(
        one_p_4x.mul(&RatFunc::constant_q(1, 8)),
        RatFunc::from_terms(&[(0, 1, 1, 1)]).div(&one_p_4x),
    );
    // disC0 = (1−4s₁)⁴ + 256 s₁² (1−8s₁) s₂ (1+s₂).
    let disc0 = poly(&[(0, 0, 1, 1), (1, 0, -4, 1)]).pow(4).add(
        &poly(&[(2, 1, 256, 1)])
            .mul(&poly(&[(0, 0, 1, 1), (1, 0, -8, 1)]))
            .mul(&poly(&[(0, 0, 1, 1), (0, 1, 1, 1)])),
    );
    let discriminants = vec![
        Discriminant {
            label: "disC0",
            poly: disc0,
            exponent: qq(-4, 3),
        },
        Discriminant {
            label: "disC1",
            poly: poly(&[(0, 0, 1, 1), (0, 1, 1, 1)]),
            exponent: qq(-1, 1),
        },
        Discriminant {
            label: "disC2",
            poly: poly(&[(0, 0, 1, 1), (1, 0, -4, 1)]),
            exponent: qq(-1, 1),
        },
        Discriminant {
            label: "disC3",
            poly: poly(&[(0, 0, 1, 1), (1, 0, -8, 1)]),
            exponent: qq(-5, 3),
        },
    ];
    ChartSpec {
        name: ChartName::C,
        vars: ("s1", "s2"),
        to_base,
        from_base,
        discriminants,
        coord_exponents: (qq(-7, 3), qq(-1, 1)),
        n_p: RootTwo::new(qq(1, 1), -1),
        c1: GaussQ::i(),
        c2: GaussQ::one(),
        topology: TopologicalData {
            cubic: [16, 8, 0, 0],
            c2: (16, 0),
            chi: 0,
            h11: 2,
        },
    }
}

static REGISTRY: Lazy<BTreeMap<ChartName, ChartSpec>> = Lazy::new(|| {
    let mut m = BTreeMap::new();

    m.insert(
        ChartName::A,
        chart_a(ChartName::A, ("x", "y"), RatMap::identity()),
    );

    // A′: (x₁, y₁) = (x, −4x−y−1); the map is an involution of the plane.
    let aprime_map = RatMap::new(
        RatFunc::var1(),
        RatFunc::from_terms(&[(0, 0, -1, 1), (1, 0, -4, 1), (0, 1, -1, 1)]),
    );
    m.insert(
        ChartName::APrime,
        chart_a(ChartName::APrime, ("x1", "y1"), aprime_map),
    );

    // Ã: (x̃, ỹ) = (1/(16x), y/(4x)); again an involution of the plane.
    let x = RatFunc::var1();
    let y = RatFunc::var2();
    let tilde_map = RatMap::new(
        RatFunc::constant_q(1, 16).div(&x),
        y.div(&x.mul(&RatFunc::constant_q(4, 1))),
    );
    m.insert(
        ChartName::ATilde,
        chart_a(ChartName::ATilde, ("xt", "yt"), tilde_map),
    );

    m.insert(ChartName::B, chart_b());
    m.insert(ChartName::C, chart_c());
    m
});

/// Access the immutable chart registry entry for `name`.
pub fn chart(name: ChartName) -> &'static ChartSpec {
    REGISTRY.get(&name).expect("registry holds all charts")
}

/// All chart specifications in registry order.
pub fn all_charts() -> impl Iterator<Item = &'static ChartSpec> {
    ChartName::ALL.iter().map(|&n| chart(n))
}

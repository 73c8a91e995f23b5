//! The framed period basis attached to a chart's six log-solutions.
//!
//! Raw Frobenius solutions are not periods: an integral symplectic frame
//! `Π = N_P · M · (ω₀, n₁ω₁, n₁ω₂, n₂ω_{2,2}, n₂ω_{2,1}, n₃ω₃)ᵀ`
//! (with `n_k = 1/(2πi)^k`) combines them through a lower-triangular matrix
//! `M` built from the topological constants of the mirror threefold:
//!
//! ```text
//!         ⎛ 1   0   0    0    0    0   ⎞
//!         ⎜ 0   1   0    0    0    0   ⎟
//!         ⎜ 0   0   1    0    0    0   ⎟
//!   M  =  ⎜ β₂  0   0   K/2   0    0   ⎟ ,   β_k = −c₂·D_k/24,
//!         ⎜ β₁  0   0    0   K/2   0   ⎟     K   = D₁²D₂,
//!         ⎝ γ   β₁  β₂   0    0  −K/6  ⎠     γ   = −ζ(3)χ/(2πi)³.
//!
//! ```
//!
//! The degree-of-freedom slots that other families use to tune the frame
//! (the `a_ij` block) are fixed to zero here, and the transcendental entry
//! `γ` is kept symbolic: the matrix stores its rational part (zero) and the
//! Euler number `χ` is recorded separately so consumers can restore
//! `−ζ(3)χ/(2πi)³` when they work numerically.  For every chart of this
//! family `χ = 0`, so `γ` vanishes identically — but the slot is still
//! threaded through so the frame stays honest about its origin.
//!
//! [`PeriodBasis`] bundles the solutions, the frame, the per-solution
//! `1/(2πi)` powers and the overall normalization `N_P`, and serializes the
//! whole package to canonical JSON for the CLI.

use algebra_core::{fmt_q, qi, qq, LogSolution, Mat, Q};
use moduli_charts::{chart, ChartName, RootTwo, TopologicalData};
use serde_json::{json, Value};

/// Canonical labels of the six solutions, in storage order.
pub const SOLUTION_LABELS: [&str; 6] = [
    "omega0", "omega1", "omega2", "omega22", "omega21", "omega3",
];

/// Power of `1/(2πi)` attached to each solution slot before framing.
pub const TWO_PI_I_POWERS: [u8; 6] = [0, 1, 1, 2, 2, 3];

/// The lower-triangular framing matrix `M` of a chart's topology, with the
/// transcendental `γ` entry replaced by its rational part (zero).
pub fn framing_matrix(topology: &TopologicalData) -> Mat<Q> {
    let k = topology.kappa();
    let b1 = topology.beta(1);
    let b2 = topology.beta(2);
    let z = Q::from(num::BigInt::from(0));
    let one = qi(1);
    Mat::from_rows(vec![
        vec![one.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), one.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), one.clone(), z.clone(), z.clone(), z.clone()],
        vec![b2.clone(), z.clone(), z.clone(), qq(k, 2), z.clone(), z.clone()],
        vec![b1.clone(), z.clone(), z.clone(), z.clone(), qq(k, 2), z.clone()],
        vec![z.clone(), b1, b2, z.clone(), z.clone(), qq(-k, 6)],
    ])
}

/// A chart's six log-solutions together with the data needed to read them
/// as an integral symplectic period vector.
#[derive(Clone, Debug)]
pub struct PeriodBasis {
    /// Which boundary chart the basis lives at.
    pub chart: ChartName,
    /// Truncation window `(n₁, n₂)` of every stored series.
    pub truncation: (u32, u32),
    /// The solutions in the order of [`SOLUTION_LABELS`].
    pub solutions: [LogSolution; 6],
    /// The framing matrix `M` (rational part; see [`framing_matrix`]).
    pub framing: Mat<Q>,
    /// Euler number `χ` entering the symbolic `γ = −ζ(3)χ/(2πi)³`.
    pub gamma_chi: i64,
    /// `1/(2πi)` powers per solution slot ([`TWO_PI_I_POWERS`]).
    pub two_pi_i_powers: [u8; 6],
    /// Overall normalization constant `N_P`.
    pub n_p: RootTwo,
}

impl PeriodBasis {
    /// Assemble the basis for a chart from freshly solved log-solutions.
    pub fn assemble(
        name: ChartName,
        truncation: (u32, u32),
        solutions: [LogSolution; 6],
    ) -> Self {
        let spec = chart(name);
        PeriodBasis {
            chart: name,
            truncation,
            solutions,
            framing: framing_matrix(&spec.topology),
            gamma_chi: spec.topology.chi,
            two_pi_i_powers: TWO_PI_I_POWERS,
            n_p: spec.n_p.clone(),
        }
    }

    /// Look up a solution by its canonical label.
    pub fn solution(&self, label: &str) -> Option<&LogSolution> {
        SOLUTION_LABELS
            .iter()
            .position(|&l| l == label)
            .map(|i| &self.solutions[i])
    }

    /// The unique regular solution (holomorphic period).
    pub fn omega0(&self) -> &algebra_core::BiSeries<Q> {
        self.solutions[0]
            .part(0, 0)
            .expect("the regular solution has a nonzero series part")
    }

    /// Canonical JSON rendering: deterministic, exact rationals as strings,
    /// one object per solution keyed by label.
    pub fn to_canonical_json(&self) -> Value {
        let spec = chart(self.chart);
        let solutions: Vec<Value> = SOLUTION_LABELS
            .iter()
            .zip(self.solutions.iter())
            .zip(self.two_pi_i_powers.iter())
            .map(|((label, sol), power)| {
                let parts: Vec<Value> = sol
                    .iter()
                    .map(|(&(a, b), series)| {
                        json!({
                            "log_powers": [a, b],
                            "series": series_json(series),
                        })
                    })
                    .collect();
                json!({
                    "label": label,
                    "two_pi_i_power": power,
                    "parts": parts,
                })
            })
            .collect();
        let framing: Vec<Vec<String>> = self
            .framing
            .rows()
            .iter()
            .map(|row| row.iter().map(fmt_q).collect())
            .collect();
        json!({
            "chart": self.chart.ascii(),
            "variables": [spec.vars.0, spec.vars.1],
            "truncation": [self.truncation.0, self.truncation.1],
            "normalization_constant": self.n_p.to_string(),
            "framing_matrix": framing,
            "gamma_chi": self.gamma_chi,
            "solutions": solutions,
        })
    }
}

fn series_json(series: &algebra_core::BiSeries<Q>) -> Value {
    let s = series
        .to_canonical_json()
        .expect("period series have finite windows");
    serde_json::from_str(&s).expect("canonical series JSON is valid JSON")
}

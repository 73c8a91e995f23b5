//! Independent torus-residue oracle for the holomorphic period.
//!
//! The holomorphic period of the fibered family has a second life that
//! never touches differential operators: it is the constant term, over the
//! compact torus `|x_1| = … = |x_7| = 1` (with `x_0 = 1`), of the geometric
//! series built from the four defining quadrics.  Writing each quadric as
//!
//! ```text
//! f_i = w_2 x_{i+1} x_{i+5} (1 − P_i),
//! ```
//!
//! the period is `CT[ Σ P_1^{n_1} P_2^{n_2} P_3^{n_3} P_4^{n_4} ]`, and the
//! surviving monomials `w_0^α w_1^β w_2^{−α−β}` convert to the chart
//! coordinates through `x = w_0²/(4 w_2²)`, `y = −2 w_1⁴/(w_0 w_2³)`, i.e.
//! `α = 2i − j`, `β = 4j`.
//!
//! Two structural facts make the enumeration exact over machine integers:
//! every `P_i`-factor carries exactly one power of `w_0` (coefficient
//! `−1/2`) or `w_1` (coefficient `−1`), so a product of `n` factors has
//! sign `(−1)^n` and dyadic weight `2^{−α}` — and once `(α, β)` is pinned
//! to a target monomial `x^i y^j`, the sign and all powers of two cancel
//! against the coordinate change.  The coefficient of `x^i y^j` in the
//! period is therefore a plain non-negative integer: the number of ways to
//! pick factors whose `x`-exponents cancel on the torus.
//!
//! The count is organized as a meet-in-the-middle convolution: monomial
//! layers of `P_1^a` and `P_2^b` stream against a fully indexed table of
//! `P_3^c P_4^d` products, with a per-slot reachability prune (a remaining
//! budget of `r` factors can raise an exponent by at most `2r` and lower
//! it by at most `r`).  Everything is exact; the only failure modes are an
//! over-ambitious degree request and (guarded) counter overflow.

use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};

use algebra_core::{BiSeries, Q, Z};
use heisenberg_group::defining_quadrics;
use num::Zero;

use crate::error::PFError;

/// Largest total degree the enumeration budget supports.
pub const MAX_ORACLE_DEGREE: u32 = 14;

// ---------------------------------------------------------------------------
// Key packing and a minimal multiplicative hasher
// ---------------------------------------------------------------------------

/// Exponent slots for `x_1, …, x_7` are packed seven bits wide around a
/// bias of 64, followed by the `w_0` and `w_1` exponents (six bits each).
const SLOT_BIAS: i32 = 64;

fn pack(slots: &[i32; 7], alpha: u32, beta: u32) -> u64 {
    let mut key = 0u64;
    for &s in slots {
        let biased = (s + SLOT_BIAS) as u64;
        debug_assert!(biased < 128);
        key = (key << 7) | biased;
    }
    debug_assert!(alpha < 64 && beta < 64);
    (key << 12) | ((alpha as u64) << 6) | beta as u64
}

fn pack_slots(slots: &[i32; 7]) -> u64 {
    let mut key = 0u64;
    for &s in slots {
        let biased = (s + SLOT_BIAS) as u64;
        debug_assert!(biased < 128);
        key = (key << 7) | biased;
    }
    key
}

fn unpack(mut key: u64) -> ([i32; 7], u32, u32) {
    let beta = (key & 63) as u32;
    key >>= 6;
    let alpha = (key & 63) as u32;
    key >>= 6;
    let mut slots = [0i32; 7];
    for v in (0..7).rev() {
        slots[v] = ((key & 127) as i32) - SLOT_BIAS;
        key >>= 7;
    }
    (slots, alpha, beta)
}

/// One-word multiplicative hasher for the packed keys (the keys are already
/// well-mixed exponent data, so a single multiply spreads them fine).
#[derive(Default)]
struct KeyHasher(u64);

impl Hasher for KeyHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.write_u64(b as u64);
        }
    }

    fn write_u64(&mut self, x: u64) {
        self.0 = (self.0 ^ x).wrapping_mul(0x517c_c1b7_2722_0a95);
    }
}

type KeyMap = HashMap<u64, u128, BuildHasherDefault<KeyHasher>>;

// ---------------------------------------------------------------------------
// Factor extraction from the defining quadrics
// ---------------------------------------------------------------------------

/// One monomial factor of some `P_i`: the exponent change it applies to the
/// slots `x_1..x_7` and whether it carries `w_0` (else `w_1`).
struct Factor {
    delta: [i32; 7],
    w0: bool,
}

/// Read the four `P_i` off the defining quadrics, verifying the expected
/// shape (`w_2`-term `w_2 x_{i+1} x_{i+5}`, coefficient `1/2` on `w_0`
/// squares, `1` on `w_1` bilinears) so the count bookkeeping stays exact.
fn quadric_factors() -> [Vec<Factor>; 4] {
    let quadrics = defining_quadrics();
    let mut out: [Vec<Factor>; 4] = [vec![], vec![], vec![], vec![]];
    for (idx, f) in quadrics.iter().enumerate() {
        let i = idx + 1;
        let c = (i + 1) % 8;
        let d = (i + 5) % 8;
        for (exps, coeff) in f.iter() {
            let (rat, irr) = coeff
                .as_sqrt2_pair()
                .expect("quadric coefficients are rational");
            assert!(irr.is_zero(), "quadric coefficients are rational");
            let (w0e, w1e, w2e) = (exps[0], exps[1], exps[2]);
            if w2e == 1 {
                // The factored-out term w_2 x_{i+1} x_{i+5} itself.
                assert_eq!((w0e, w1e), (0, 0), "w_2 term must be pure");
                assert_eq!(rat, algebra_core::qi(1), "w_2 term must be monic");
                for v in 0..8usize {
                    let expected = u8::from(v == c) + u8::from(v == d);
                    assert_eq!(exps[3 + v], expected, "w_2 term must be x_{{i+1}} x_{{i+5}}");
                }
                continue;
            }
            assert_eq!(w2e, 0, "unexpected w_2 power in a quadric");
            let w0 = w0e == 1;
            let expected = if w0 {
                assert_eq!(w1e, 0);
                algebra_core::qq(1, 2)
            } else {
                assert_eq!((w0e, w1e), (0, 1));
                algebra_core::qi(1)
            };
            assert_eq!(rat, expected, "quadric term has an unexpected coefficient");
            let mut delta = [0i32; 7];
            for v in 1..8usize {
                let mut e = exps[3 + v] as i32;
                if v == c {
                    e -= 1;
                }
                if v == d {
                    e -= 1;
                }
                delta[v - 1] = e;
            }
            out[idx].push(Factor { delta, w0 });
        }
        assert_eq!(out[idx].len(), 4, "each P_i has four monomial factors");
    }
    out
}

// ---------------------------------------------------------------------------
// Layered enumeration
// ---------------------------------------------------------------------------

/// Unpacked layer entry: slots, `w_0`/`w_1` exponents, multiplicity.
type Entry = ([i32; 7], u32, u32, u128);

fn unpack_layer(layer: &KeyMap) -> Vec<Entry> {
    layer
        .iter()
        .map(|(&k, &c)| {
            let (slots, alpha, beta) = unpack(k);
            (slots, alpha, beta, c)
        })
        .collect()
}

/// Monomial layers of `P^0, P^1, …` for one quadric, pruned to slot values
/// a remaining budget of `budget − n` factors can still cancel.
fn power_layers(
    factors: &[Factor],
    budget: u32,
    alpha_max: u32,
    beta_max: u32,
) -> Result<Vec<Vec<Entry>>, PFError> {
    let mut layers: Vec<Vec<Entry>> = Vec::new();
    let mut current: KeyMap = KeyMap::default();
    current.insert(pack(&[0; 7], 0, 0), 1);
    layers.push(unpack_layer(&current));
    for n in 1..=budget {
        let r = (budget - n) as i32;
        let (lo, hi) = (-2 * r, r);
        let mut next: KeyMap = KeyMap::default();
        for (&key, &count) in &current {
            let (slots, alpha, beta) = unpack(key);
            for f in factors {
                let (a2, b2) = if f.w0 { (alpha + 1, beta) } else { (alpha, beta + 1) };
                if a2 > alpha_max || b2 > beta_max {
                    continue;
                }
                let mut s2 = slots;
                let mut reachable = true;
                for v in 0..7 {
                    s2[v] += f.delta[v];
                    if s2[v] < lo || s2[v] > hi {
                        reachable = false;
                        break;
                    }
                }
                if !reachable {
                    continue;
                }
                let slot = next.entry(pack(&s2, a2, b2)).or_insert(0);
                *slot = match slot.checked_add(count) {
                    Some(v) => v,
                    None => return Err(PFError::OracleOverflow),
                };
            }
        }
        // Pruning only tightens with n, so an empty layer ends the tower.
        if next.is_empty() {
            break;
        }
        layers.push(unpack_layer(&next));
        current = next;
    }
    Ok(layers)
}

/// Flat slot-indexed table of all `P_3^c P_4^d` monomials: a lookup from
/// packed slots into a run of `(α, β, count)` rows.
struct RightTable {
    index: HashMap<u64, (u32, u32), BuildHasherDefault<KeyHasher>>,
    rows: Vec<(u32, u32, u128)>,
}

fn build_right_table(
    t3: &[Vec<Entry>],
    t4: &[Vec<Entry>],
    budget: u32,
    alpha_max: u32,
    beta_max: u32,
) -> Result<RightTable, PFError> {
    let mut full: KeyMap = KeyMap::default();
    for (a, la) in t3.iter().enumerate() {
        for (b, lb) in t4.iter().enumerate() {
            let n = (a + b) as u32;
            if n > budget {
                break;
            }
            let r = (budget - n) as i32;
            let (lo, hi) = (-2 * r, r);
            for (s3, a3, b3, c3) in la {
                'right: for (s4, a4, b4, c4) in lb {
                    let alpha = a3 + a4;
                    let beta = b3 + b4;
                    if alpha > alpha_max || beta > beta_max {
                        continue;
                    }
                    let mut slots = [0i32; 7];
                    for v in 0..7 {
                        slots[v] = s3[v] + s4[v];
                        if slots[v] < lo || slots[v] > hi {
                            continue 'right;
                        }
                    }
                    let c = match c3.checked_mul(*c4) {
                        Some(v) => v,
                        None => return Err(PFError::OracleOverflow),
                    };
                    let slot = full.entry(pack(&slots, alpha, beta)).or_insert(0);
                    *slot = match slot.checked_add(c) {
                        Some(v) => v,
                        None => return Err(PFError::OracleOverflow),
                    };
                }
            }
        }
    }

    // Group rows by slot key for O(1) lookup during the streaming pass.
    let mut grouped: HashMap<u64, Vec<(u32, u32, u128)>, BuildHasherDefault<KeyHasher>> =
        HashMap::default();
    for (key, count) in full {
        let (slots, alpha, beta) = unpack(key);
        grouped
            .entry(pack_slots(&slots))
            .or_default()
            .push((alpha, beta, count));
    }
    let mut index = HashMap::default();
    let mut rows = Vec::new();
    for (skey, mut group) in grouped {
        group.sort_unstable();
        let start = rows.len() as u32;
        rows.extend_from_slice(&group);
        index.insert(skey, (start, group.len() as u32));
    }
    Ok(RightTable { index, rows })
}

// ---------------------------------------------------------------------------
// The oracle
// ---------------------------------------------------------------------------

/// Count the torus-residue expansion of the holomorphic period through the
/// given total degree, entirely independently of the operator pair.
///
/// The result is returned on a `(d, d)` window, but only coefficients with
/// `i + j <= d` are populated (and meaningful); everything farther out is
/// untouched by the enumeration and left at zero.
pub fn omega0_residue_oracle(max_total_degree: u32) -> Result<BiSeries<Q>, PFError> {
    let d = max_total_degree;
    if d > MAX_ORACLE_DEGREE {
        return Err(PFError::OracleDegreeTooLarge {
            requested: d,
            max: MAX_ORACLE_DEGREE,
        });
    }
    // A target monomial x^i y^j pulls back to w_0^(2i−j) w_1^(4j), so the
    // factor budget 2i + 3j and the exponent caps below cover i + j <= d.
    let budget = 3 * d;
    let alpha_max = 2 * d;
    let beta_max = 4 * d;

    let factors = quadric_factors();
    let t1 = power_layers(&factors[0], budget, alpha_max, beta_max)?;
    let t2 = power_layers(&factors[1], budget, alpha_max, beta_max)?;
    let t3 = power_layers(&factors[2], budget, alpha_max, beta_max)?;
    let t4 = power_layers(&factors[3], budget, alpha_max, beta_max)?;
    let right = build_right_table(&t3, &t4, budget, alpha_max, beta_max)?;

    // Stream P_1^a P_2^b monomials against the table: a pair contributes
    // exactly when the slots cancel, and then (α, β) pins the target (i, j).
    let side = (d + 1) as usize;
    let mut counts = vec![0u128; side * side];
    for (a, la) in t1.iter().enumerate() {
        for (b, lb) in t2.iter().enumerate() {
            if (a + b) as u32 > budget {
                break;
            }
            for (s1, a1, b1, c1) in la {
                'pair: for (s2, a2, b2, c2) in lb {
                    let alpha_l = a1 + a2;
                    let beta_l = b1 + b2;
                    if alpha_l > alpha_max || beta_l > beta_max {
                        continue;
                    }
                    let mut want = [0i32; 7];
                    for v in 0..7 {
                        want[v] = -(s1[v] + s2[v]);
                        if want[v] < -2 * (budget as i32) || want[v] > budget as i32 {
                            continue 'pair;
                        }
                    }
                    let Some(&(start, len)) = right.index.get(&pack_slots(&want)) else {
                        continue;
                    };
                    let cl = match c1.checked_mul(*c2) {
                        Some(v) => v,
                        None => return Err(PFError::OracleOverflow),
                    };
                    for &(ar, br, cr) in
                        &right.rows[start as usize..(start + len) as usize]
                    {
                        let alpha = alpha_l + ar;
                        let beta = beta_l + br;
                        // Convert (α, β) back to (i, j); non-expressible
                        // classes cancel in the full constant term and are
                        // not part of any x^i y^j coefficient.
                        if beta % 4 != 0 {
                            continue;
                        }
                        let j = beta / 4;
                        if (alpha + j) % 2 != 0 {
                            continue;
                        }
                        let i = (alpha + j) / 2;
                        if i + j > d {
                            continue;
                        }
                        let cell = &mut counts[(i as usize) * side + j as usize];
                        let add = match cl.checked_mul(cr) {
                            Some(v) => v,
                            None => return Err(PFError::OracleOverflow),
                        };
                        *cell = match cell.checked_add(add) {
                            Some(v) => v,
                            None => return Err(PFError::OracleOverflow),
                        };
                    }
                }
            }
        }
    }

    let mut out = BiSeries::zero_window((d, d));
    for i in 0..=d {
        for j in 0..=d {
            let c = counts[(i as usize) * side + j as usize];
            if c != 0 {
                out.set(i, j, Q::from(Z::from(c)));
            }
        }
    }
    Ok(out)
}

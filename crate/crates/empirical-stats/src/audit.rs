//! Exact audit of the nested/exterior decomposition of the pair count
//! `#{(γ, γ′) : γ ≠ γ′, 0 ≤ Φ(γ′) − Φ(γ) ≤ ξ/Q²}` over the ball `‖γ‖ ≤ Q`.
//!
//! Three independent counts: brute force over sorted `Φ` with every pair classified,
//! the nested count from the shift function `Ξ_M`, and the exterior count from the
//! integer Farey chain with the `Υ_{ℓ,K}` bound.

use hyperbolic_core::{xi_shift, UnimodularMatrix};
use lattice_enum::enumerate_ball;
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Signed;

use crate::classify::{classify_matrices, PairClass};
use crate::error::StatsError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionAudit {
    pub order: i64,
    pub xi: Ratio<i64>,
    /// Ordered pairs found by brute force, split by classification.
    pub brute_total: u64,
    pub brute_nested: u64,
    pub brute_exterior: u64,
    /// Unordered pairs with equal `Φ` (counted twice in the brute totals).
    pub ties: u64,
    pub nested_count: u64,
    pub exterior_count: u64,
    pub max_ell: Option<usize>,
    pub max_k: Option<i64>,
    /// Every exterior pair had `ℓ < ξ` and `K < ξ`.
    pub bounds_hold: bool,
}

impl DecompositionAudit {
    pub fn holds(&self) -> bool {
        self.brute_total == self.nested_count + self.exterior_count
            && self.brute_nested == self.nested_count
            && self.brute_exterior == self.exterior_count
            && self.bounds_hold
    }
}

fn big_ratio(n: i128, d: i128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

struct Window {
    num: i128,
    den: i128,
    q2: i128,
}

impl Window {
    /// `z1/y1 − z0/y0 ≤ ξ/Q²`, with the difference already known to be ≥ 0.
    fn contains(&self, (z0, y0): (i128, i128), (z1, y1): (i128, i128)) -> bool {
        (z1 * y0 - z0 * y1) * self.q2 * self.den <= self.num * y0 * y1
    }

    fn big(&self) -> BigRational {
        big_ratio(self.num, self.den * self.q2)
    }

    fn exceeds_int(&self, n: i64) -> bool {
        (n as i128) * self.den < self.num
    }
}

fn phi_parts(g: &UnimodularMatrix) -> (i128, i128) {
    let (a, b, c, d) = (g.a as i128, g.b as i128, g.c as i128, g.d as i128);
    (a * c + b * d, c * c + d * d)
}

pub fn decomposition_audit(order: i64, xi: Ratio<i64>) -> Result<DecompositionAudit, StatsError> {
    if order < 2 || *xi.numer() < 0 || *xi.denom() <= 0 {
        return Err(StatsError::BadBins);
    }
    let win = Window { num: *xi.numer() as i128, den: *xi.denom() as i128, q2: (order as i128) * (order as i128) };
    let mut pts: Vec<(UnimodularMatrix, (i128, i128))> =
        enumerate_ball(order).into_iter().map(|p| (p.matrix, phi_parts(&p.matrix))).collect();
    pts.sort_by(|x, y| (x.1 .0 * y.1 .1).cmp(&(y.1 .0 * x.1 .1)));

    let mut audit = DecompositionAudit {
        order,
        xi,
        brute_total: 0,
        brute_nested: 0,
        brute_exterior: 0,
        ties: 0,
        nested_count: 0,
        exterior_count: 0,
        max_ell: None,
        max_k: None,
        bounds_hold: true,
    };
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let (g, f) = pts[i];
            let (g2, f2) = pts[j];
            if !win.contains(f, f2) {
                break;
            }
            let tie = f.0 * f2.1 == f2.0 * f.1;
            let mult = if tie { 2 } else { 1 };
            audit.ties += tie as u64;
            audit.brute_total += mult;
            match classify_matrices(&g, &g2, order)? {
                PairClass::Nested { .. } => audit.brute_nested += mult,
                PairClass::Exterior { ell, k, .. } => {
                    audit.brute_exterior += mult;
                    audit.max_ell = audit.max_ell.max(Some(ell));
                    audit.max_k = audit.max_k.max(Some(k));
                    audit.bounds_hold &= win.exceeds_int(ell as i64) && win.exceeds_int(k);
                }
            }
        }
    }
    let gammas: Vec<UnimodularMatrix> = pts.iter().map(|p| p.0).collect();
    audit.nested_count = nested_count(&gammas, order, &win)?;
    audit.exterior_count = exterior_count(&gammas, order, &win);
    Ok(audit)
}

/// `#{(γ, γM) : M ∈ 𝔖, γM in the ball, |Ξ_M(q′, q)| ≤ ξ/Q²}`.
fn nested_count(gammas: &[UnimodularMatrix], order: i64, win: &Window) -> Result<u64, StatsError> {
    let bound = (order as i128) * (order as i128);
    let limit = win.big();
    let mut count = 0u64;
    for g in gammas {
        let mut stack = vec![UnimodularMatrix::L, UnimodularMatrix::R];
        while let Some(m) = stack.pop() {
            let gm = g.checked_mul(&m)?;
            if gm.norm_sq()? > bound {
                continue;
            }
            if xi_shift(&m, g.c, g.d)?.abs() <= limit {
                count += 1;
            }
            stack.push(m.checked_mul(&UnimodularMatrix::L)?);
            stack.push(m.checked_mul(&UnimodularMatrix::R)?);
        }
    }
    Ok(count)
}

/// `Υ_{ℓ,K}(q/Q, q′/Q)` from the denominators `q_{−1}, …, q_{ℓ+1}`.
fn upsilon(qs: &[i64], order: i64) -> BigRational {
    let n = qs.len();
    let r = |v: i64| v as i128;
    let q2 = r(order) * r(order);
    let (qm, q0) = (r(qs[0]), r(qs[1]));
    let mut s = big_ratio(q2 * qm, q0 * (qm * qm + q0 * q0));
    for w in qs[1..n - 1].windows(2) {
        s += big_ratio(q2, r(w[0]) * r(w[1]));
    }
    let (ql, qn) = (r(qs[n - 2]), r(qs[n - 1]));
    s + big_ratio(q2 * qn, ql * (ql * ql + qn * qn))
}

/// Counts `(γ, ℓ, K)` with `ℓ, K < ξ` whose chain end `γ′` is in the ball and in `Γ_I`
/// and satisfies `Υ_{ℓ,K} ≤ ξ`.
fn exterior_count(gammas: &[UnimodularMatrix], order: i64, win: &Window) -> u64 {
    let q2 = (order as i128) * (order as i128);
    let xi = big_ratio(win.num, win.den);
    let mut count = 0u64;
    for g in gammas {
        let mut ps = vec![g.b, g.a];
        let mut qs = vec![g.d, g.c];
        let mut ell = 0usize;
        while win.exceeds_int(ell as i64) {
            if ell > 0 {
                let n = qs.len();
                let k = (order + qs[n - 2]) / qs[n - 1];
                ps.push(k * ps[n - 1] - ps[n - 2]);
                qs.push(k * qs[n - 1] - qs[n - 2]);
            }
            let n = qs.len();
            let (pl, ql, pm, qm) = (ps[n - 1], qs[n - 1], ps[n - 2], qs[n - 2]);
            let mut k = 1i64;
            while win.exceeds_int(k) {
                let (pn, qn) = (k * pl - pm, k * ql - qm);
                k += 1;
                if qn <= 0 || qn > order {
                    continue;
                }
                let norm = [pl, ql, pn, qn].iter().map(|&v| (v as i128) * (v as i128)).sum::<i128>();
                if norm > q2 || pl < 0 || pl > ql || pn < 0 || pn > qn {
                    continue;
                }
                let mut chain = qs.clone();
                chain.push(qn);
                if upsilon(&chain, order) <= xi {
                    count += 1;
                }
            }
            ell += 1;
        }
    }
    count
}

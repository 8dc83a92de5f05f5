//! `g₂(0)` as a sum over discriminants.
//!
//! Every solution of `u² − d v² = 4` with `u ≥ 3` is `ε_u = (u + v√d)/2 = α_dⁿ` for a
//! unique `n ≥ 1`, so enumerating `u` and the square divisors `v² | u² − 4` visits each pair
//! `(d, n)` exactly once, at `u = tr(α_dⁿ)`. The first `u` at which `d` appears is its
//! fundamental solution. Hence `α_d ≤ α_max` iff `d` first shows up at some `u` with
//! `ε_u ≤ α_max`, and no sieve over `d` itself (which would reach `α_max²`) is needed.

use std::collections::HashSet;

use semigroup_series::SeriesResult;

use crate::arith::{d_r_class, merge_factors, SpfSieve};
use crate::error::GeodesicError;
use crate::reciprocal::norm_of_trace;

const SAFETY: f64 = 2.0;
const MAX_TRACE: f64 = 4.0e9;

/// Calls `f(d, ν(d))` for every `d ∈ 𝒟_ℛ` with `v² d = u² − 4`, `v ≥ 1`.
fn for_each_discriminant<F: FnMut(u64, u64)>(sieve: &SpfSieve, u: usize, mut f: F) {
    let n = merge_factors(&sieve.factorize(u - 2), &sieve.factorize(u + 2));
    let mut halves: Vec<u32> = vec![0; n.len()];
    loop {
        let reduced: Vec<(u128, u32)> =
            n.iter().zip(&halves).map(|(&(p, e), &k)| (p, e - 2 * k)).filter(|&(_, e)| e > 0).collect();
        if let Some((_, nu)) = d_r_class(&reduced) {
            let d = reduced.iter().fold(1u64, |acc, &(p, e)| acc * (p as u64).pow(e));
            f(d, nu);
        }
        // odometer over 0 ≤ k_i ≤ e_i/2
        let mut i = 0;
        while i < n.len() {
            if 2 * (halves[i] + 1) <= n[i].1 {
                halves[i] += 1;
                break;
            }
            halves[i] = 0;
            i += 1;
        }
        if i == n.len() {
            return;
        }
    }
}

/// `w(u) = Σ ν(d)` over `d ∈ 𝒟_ℛ` with `(u² − 4)/d` a square, for `u ≤ u_max` (index `u`).
///
/// The symmetrization map is two-to-one onto reciprocal classes weighted this way, so
/// `#{M ∈ 𝔖 : ‖M‖² = u} = 2 w(u)`.
pub fn trace_weights(u_max: usize) -> Vec<u64> {
    let mut w = vec![0u64; u_max.max(2) + 1];
    if u_max < 3 {
        return w;
    }
    let sieve = SpfSieve::new(u_max + 2);
    for (u, slot) in w.iter_mut().enumerate().skip(3) {
        for_each_discriminant(&sieve, u, |_, nu| *slot += nu);
    }
    w
}

/// `Σ_{n ≥ 1} 1/(α^{2n} − 1)`, summed until `α^{2n}` passes `10²⁰`, then the geometric rest.
pub fn inner_series(alpha: f64) -> f64 {
    let a2 = alpha * alpha;
    let mut p = a2;
    let mut s = 0.0;
    while p < 1e20 {
        s += 1.0 / (p - 1.0);
        p *= a2;
    }
    s + 1.0 / (p - p / a2)
}

/// `(8/3) Σ_{d ∈ 𝒟_ℛ, α_d ≤ α_max} ν(d) Σ_n 1/(α_d^{2n} − 1)`.
///
/// `truncation_norm_sq` holds the largest trace `U` visited and `terms_used` the number of
/// discriminants. Every missing pair `(d, n)` sits at some `u > U` and contributes
/// `ν(d)/(ε_u² − 1) ≤ ν(d)/(u² − 4)`; with `W(t) = Σ_{u ≤ t} w(u) ≤ ĉ t` beyond `U`, the same
/// Abel bound as the semigroup series applies with `c = 8/3`, `κ = 4`.
pub fn g2_zero_arithmetic(alpha_max: f64) -> Result<SeriesResult, GeodesicError> {
    if !(alpha_max > 1.0) || alpha_max > MAX_TRACE {
        return Err(GeodesicError::BadAlphaMax(alpha_max));
    }
    // ε_u is increasing in u and ε_u < u
    let mut u_top = alpha_max.floor() as usize + 1;
    while u_top >= 3 && norm_of_trace(u_top as f64) > alpha_max {
        u_top -= 1;
    }
    let u_top = u_top.max(2);
    let half = u_top / 2;
    let sieve = SpfSieve::new(u_top + 2);
    let mut seen: HashSet<u64> = HashSet::new();
    let (mut sum, mut sum_half, mut terms) = (0.0f64, 0.0f64, 0u64);
    let mut weight = 0u64;
    let mut slope = 0.0f64;
    for u in 3..=u_top {
        let eps = norm_of_trace(u as f64);
        for_each_discriminant(&sieve, u, |d, nu| {
            weight += nu;
            if seen.insert(d) {
                let v = nu as f64 * inner_series(eps);
                sum += v;
                terms += 1;
                if u <= half {
                    sum_half += v;
                }
            }
        });
        if u >= half {
            slope = slope.max(weight as f64 / u as f64);
        }
    }
    let x = u_top as f64;
    let c = 8.0 / 3.0;
    let tail_bound =
        if x * x > 8.0 { SAFETY * 2.0 * c * slope / x * (x * x / (x * x - 4.0)).powi(2) } else { f64::INFINITY };
    Ok(SeriesResult {
        value: c * sum,
        truncation_norm_sq: u_top as i128,
        tail_bound,
        terms_used: terms,
        extrapolated_tail: c * (sum - sum_half),
        count_slope: slope,
    })
}

use hyperbolic_core::UnimodularMatrix;
use rayon::prelude::*;

use crate::error::SeriesError;

/// `M ∈ 𝔖` with its quadratic invariants and the angle data of the region `S_{M,ξ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemigroupElement {
    pub matrix: UnimodularMatrix,
    /// `‖M‖²`
    pub t: i128,
    pub x: i128,
    pub y: i128,
    pub z: i128,
    /// `θ_M ∈ (0, π)` with `sin θ_M = 2Z/√Δ`, `cos θ_M = (Y−X)/√Δ`.
    pub theta_m: f64,
    /// `√Δ = √(T² − 4)`
    pub sqrt_delta: f64,
    /// `U = T/√Δ`
    pub u: f64,
    /// `U − 1`, without cancellation.
    pub u_minus_one: f64,
}

impl SemigroupElement {
    pub fn from_matrix(m: UnimodularMatrix) -> Result<Self, SeriesError> {
        if !m.is_nonnegative() || m == UnimodularMatrix::IDENTITY {
            return Err(SeriesError::NotInSemigroup(m.to_string()));
        }
        let (a, b, c, d) = (m.a as i128, m.b as i128, m.c as i128, m.d as i128);
        let (x, y, z) = (a * a + b * b, c * c + d * d, a * c + b * d);
        let t = x + y;
        let tf = t as f64;
        let sqrt_delta = ((tf - 2.0) * (tf + 2.0)).sqrt();
        Ok(SemigroupElement {
            matrix: m,
            t,
            x,
            y,
            z,
            theta_m: (2.0 * z as f64).atan2((y - x) as f64),
            sqrt_delta,
            u: tf / sqrt_delta,
            u_minus_one: 4.0 / (sqrt_delta * (tf + sqrt_delta)),
        })
    }

    /// Word over `{L, R}`, multiplied left to right.
    pub fn from_word(word: &str) -> Result<Self, SeriesError> {
        if word.is_empty() {
            return Err(SeriesError::NotInSemigroup("empty word".into()));
        }
        Self::from_matrix(UnimodularMatrix::from_word(word)?)
    }

    /// Recovers the word by peeling generators off the right (Euclid's algorithm).
    pub fn word(&self) -> String {
        let (mut a, mut b, mut c, mut d) = (self.matrix.a, self.matrix.b, self.matrix.c, self.matrix.d);
        let mut rev = Vec::new();
        while (a, b, c, d) != (1, 0, 0, 1) {
            if a >= b && c >= d {
                // M' L = (a'+b', b'; c'+d', d')
                rev.push('L');
                a -= b;
                c -= d;
            } else {
                rev.push('R');
                b -= a;
                d -= c;
            }
        }
        rev.iter().rev().collect()
    }

    /// `ηMη` with `η = (0 1; 1 0)`: swaps L and R.
    pub fn eta(&self) -> Self {
        Self::from_matrix(self.matrix.eta_conjugate()).expect("η preserves the semigroup")
    }

    pub fn sin_theta_m(&self) -> f64 {
        2.0 * self.z as f64 / self.sqrt_delta
    }

    pub fn cos_theta_m(&self) -> f64 {
        (self.y - self.x) as f64 / self.sqrt_delta
    }

    /// `U + cos φ` computed as `(U − 1) + 2cos²(φ/2)`.
    pub fn denominator(&self, phi: f64) -> f64 {
        let c = (0.5 * phi).cos();
        self.u_minus_one + 2.0 * c * c
    }
}

fn norm_sq(m: &UnimodularMatrix) -> i128 {
    m.entries().iter().map(|&v| (v as i128) * (v as i128)).sum()
}

fn children(m: &UnimodularMatrix) -> [UnimodularMatrix; 2] {
    let (a, b, c, d) = (m.a, m.b, m.c, m.d);
    // M·L and M·R
    [UnimodularMatrix { a: a + b, b, c: c + d, d }, UnimodularMatrix { a, b: a + b, c, d: c + d }]
}

/// Subtree roots for parallel work plus the nodes above them, both in a fixed order.
fn split(norm_sq_max: i128, min_tasks: usize) -> (Vec<UnimodularMatrix>, Vec<UnimodularMatrix>) {
    let mut upper = Vec::new();
    let mut level = vec![UnimodularMatrix::L, UnimodularMatrix::R];
    while level.len() < min_tasks {
        let mut next = Vec::new();
        for m in level.iter().filter(|m| norm_sq(m) <= norm_sq_max) {
            upper.push(*m);
            next.extend(children(m));
        }
        if next.is_empty() {
            return (upper, next);
        }
        level = next;
    }
    (upper, level)
}

fn walk<F: FnMut(&UnimodularMatrix)>(root: UnimodularMatrix, norm_sq_max: i128, f: &mut F) {
    let mut stack = vec![root];
    while let Some(m) = stack.pop() {
        if norm_sq(&m) > norm_sq_max {
            continue;
        }
        f(&m);
        let [l, r] = children(&m);
        stack.push(r);
        stack.push(l);
    }
}

/// Folds `map` over every `M ∈ 𝔖` with `‖M‖² ≤ norm_sq_max`.
///
/// Appending a generator never decreases `‖M‖²`, so subtrees are pruned wholesale.
/// Subtrees are folded in parallel but always combined in the same order, so the
/// result does not depend on the thread count.
pub fn fold_semigroup<A, F, G>(norm_sq_max: i128, empty: A, fold: F, merge: G) -> A
where
    A: Send + Clone + Sync,
    F: Fn(&mut A, &SemigroupElement) + Sync,
    G: Fn(A, A) -> A,
{
    if norm_sq_max < 3 {
        return empty;
    }
    let (upper, roots) = split(norm_sq_max, 256);
    let mut acc = empty.clone();
    for m in &upper {
        fold(&mut acc, &SemigroupElement::from_matrix(*m).unwrap());
    }
    let parts: Vec<A> = roots
        .par_iter()
        .map(|r| {
            let mut a = empty.clone();
            walk(*r, norm_sq_max, &mut |m| fold(&mut a, &SemigroupElement::from_matrix(*m).unwrap()));
            a
        })
        .collect();
    parts.into_iter().fold(acc, merge)
}

/// Every `M ∈ 𝔖` with `‖M‖² ≤ norm_sq_max`, sorted by `(T, word)`.
pub fn enumerate_semigroup(norm_sq_max: i128) -> Vec<SemigroupElement> {
    let mut v = fold_semigroup(
        norm_sq_max,
        Vec::new(),
        |acc: &mut Vec<SemigroupElement>, e| acc.push(*e),
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    v.sort_by_cached_key(|e| (e.t, e.word()));
    v
}

pub fn count_semigroup(norm_sq_max: i128) -> u64 {
    fold_semigroup(norm_sq_max, 0u64, |n, _| *n += 1, |a, b| a + b)
}

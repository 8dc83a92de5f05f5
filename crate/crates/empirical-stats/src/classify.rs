use hyperbolic_core::UnimodularMatrix;
use lattice_enum::LatticePoint;

use crate::error::StatsError;

/// Which element of the pair plays the named role.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    First,
    Second,
}

/// Relative position of the Farey arcs of two distinct elements of `Γ_I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairClass {
    /// `inner = outer · m` with `m ∈ 𝔖`; `outer` names the containing arc.
    Nested { m: UnimodularMatrix, outer: Role },
    /// `right = left · (K₁ 1; −1 0)⋯(K_ℓ 1; −1 0)(K 1; −1 0)`.
    Exterior { ell: usize, k: i64, chain: Vec<i64>, left: Role, m: UnimodularMatrix },
}

/// `(K 1; −1 0)`.
pub fn chain_factor(k: i64) -> UnimodularMatrix {
    UnimodularMatrix { a: k, b: 1, c: -1, d: 0 }
}

impl PairClass {
    /// Rebuilds the second element from the first.
    pub fn reassemble(&self, first: &UnimodularMatrix) -> Result<UnimodularMatrix, StatsError> {
        let (m, first_is_base) = match self {
            PairClass::Nested { m, outer } => (*m, *outer == Role::First),
            PairClass::Exterior { ell, k, chain, left, m } => {
                let mut prod = UnimodularMatrix::IDENTITY;
                for &ki in chain.iter().chain(std::iter::once(k)) {
                    prod = prod.checked_mul(&chain_factor(ki))?;
                }
                debug_assert_eq!(chain.len(), *ell);
                debug_assert_eq!(prod, *m);
                (prod, *left == Role::First)
            }
        };
        if first_is_base {
            Ok(first.checked_mul(&m)?)
        } else {
            Ok(first.checked_mul(&m.inverse())?)
        }
    }
}

fn nested_factor(outer: &UnimodularMatrix, inner: &UnimodularMatrix) -> Result<Option<UnimodularMatrix>, StatsError> {
    let m = outer.inverse().checked_mul(inner)?;
    Ok(m.is_nonnegative().then_some(m))
}

/// Classifies the pair by the arcs `(b/d, a/c)` of `(a b; c d)`.
///
/// The exterior chain walks consecutive elements of `F_Q`, so it needs the order `Q`
/// (both arcs must have denominators at most `Q`).
pub fn classify_pair(g: &LatticePoint, g2: &LatticePoint, order: i64) -> Result<PairClass, StatsError> {
    classify_matrices(&g.matrix, &g2.matrix, order)
}

pub fn classify_matrices(g: &UnimodularMatrix, g2: &UnimodularMatrix, order: i64) -> Result<PairClass, StatsError> {
    if g == g2 {
        return Err(StatsError::SameElement);
    }
    if let Some(m) = nested_factor(g, g2)? {
        return Ok(PairClass::Nested { m, outer: Role::First });
    }
    if let Some(m) = nested_factor(g2, g)? {
        return Ok(PairClass::Nested { m, outer: Role::Second });
    }
    let before =
        |l: &UnimodularMatrix, r: &UnimodularMatrix| (l.a as i128) * (r.d as i128) <= (r.b as i128) * (l.c as i128);
    let (left, right, role) = if before(g, g2) {
        (g, g2, Role::First)
    } else if before(g2, g) {
        (g2, g, Role::Second)
    } else {
        return Err(StatsError::ArcsCross(g.to_string(), g2.to_string()));
    };
    // (p_{i−1}/q_{i−1}, p_i/q_i), starting from the left arc itself
    let (mut p0, mut q0, mut p1, mut q1) = (left.b, left.d, left.a, left.c);
    let (tp, tq) = (right.b, right.d);
    let mut chain = Vec::new();
    while (p1, q1) != (tp, tq) {
        if (p1 as i128) * (tq as i128) >= (tp as i128) * (q1 as i128) || q1 > order {
            return Err(StatsError::BrokenChain);
        }
        let k = (order + q0) / q1;
        let (np, nq) = (k * p1 - p0, k * q1 - q0);
        (p0, q0, p1, q1) = (p1, q1, np, nq);
        chain.push(k);
    }
    let at = UnimodularMatrix::new(p1, p0, q1, q0)?;
    let last = at.inverse().checked_mul(right)?;
    if last.b != 1 || last.c != -1 || last.d != 0 || last.a < 1 {
        return Err(StatsError::BrokenChain);
    }
    let m = left.inverse().checked_mul(right)?;
    Ok(PairClass::Exterior { ell: chain.len(), k: last.a, chain, left: role, m })
}

use hyperbolic_core::UnimodularMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use semigroup_series::SemigroupElement;

use crate::arith::{d_r_class, factorize};
use crate::error::GeodesicError;
use crate::pell::{alpha_of, pell_fundamental};

/// `N(A) = (T + √(T² − 4))/2`, the larger eigenvalue.
pub fn norm_of_trace(t: f64) -> f64 {
    0.5 * (t + ((t - 2.0) * (t + 2.0)).sqrt())
}

/// A symmetric hyperbolic matrix with positive entries and its geodesic data.
#[derive(Debug, Clone, PartialEq)]
pub struct ReciprocalClass {
    pub a: UnimodularMatrix,
    pub trace: i128,
    /// `N(A)`.
    pub n: f64,
    /// `2 ln N(A)`.
    pub length: f64,
    pub primitive: bool,
    /// `(B, n)` with `Bⁿ = A` and `n` maximal, when `A` is not primitive.
    pub root: Option<(UnimodularMatrix, u32)>,
}

impl ReciprocalClass {
    pub fn from_symmetric(a: UnimodularMatrix) -> Result<ReciprocalClass, GeodesicError> {
        let trace = a.trace();
        if trace <= 2 {
            return Err(GeodesicError::NotHyperbolic(trace));
        }
        let root = primitive_root(&a)?;
        let n = norm_of_trace(trace as f64);
        Ok(ReciprocalClass { a, trace, n, length: 2.0 * n.ln(), primitive: root.is_none(), root })
    }
}

/// `A = M Mᵗ`; its trace is `‖M‖²`.
pub fn symmetrize(m: &SemigroupElement) -> Result<ReciprocalClass, GeodesicError> {
    let a = m.matrix.checked_mul(&m.matrix.transpose())?;
    ReciprocalClass::from_symmetric(a)
}

/// Chebyshev pair `(2T_n(s/2), U_{n−1}(s/2))` by the trace recursion; `None` past `cap`.
fn chebyshev(s: i128, n: u32, cap: i128) -> Option<(i128, i128, i128)> {
    // t_k = tr(Bᵏ), u_k = U_{k−1}(s/2) with Bᵏ = u_k B − u_{k−1} I
    let (mut t0, mut t1) = (2i128, s);
    let (mut u0, mut u1) = (0i128, 1i128);
    for _ in 1..n {
        let t2 = s.checked_mul(t1)?.checked_sub(t0)?;
        let u2 = s.checked_mul(u1)?.checked_sub(u0)?;
        if t2 > cap {
            return None;
        }
        (t0, t1, u0, u1) = (t1, t2, u1, u2);
    }
    Some((t1, u1, u0))
}

/// The root `B` with `Bⁿ = A` for the largest `n ≥ 2`, or `None` if `A` is primitive.
///
/// For each `n`, the trace `s` of `B` solves `2T_n(s/2) = tr A`; then
/// `B = (A + U_{n−2}(s/2) I)/U_{n−1}(s/2)` by Cayley–Hamilton, accepted if integral.
pub fn primitive_root(a: &UnimodularMatrix) -> Result<Option<(UnimodularMatrix, u32)>, GeodesicError> {
    let t = a.trace();
    if t <= 2 {
        return Err(GeodesicError::NotHyperbolic(t));
    }
    let mut n_max = 1;
    while chebyshev(3, n_max + 1, t).is_some() {
        n_max += 1;
    }
    for n in (2..=n_max).rev() {
        // 2T_n(s/2) is increasing in s ≥ 2
        let (mut lo, mut hi) = (3i128, t);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match chebyshev(mid, n, t) {
                Some((tn, _, _)) if tn >= t => hi = mid,
                Some(_) => lo = mid + 1,
                None => hi = mid,
            }
        }
        let Some((tn, un1, un2)) = chebyshev(lo, n, t) else { continue };
        if tn != t {
            continue;
        }
        let num = [a.a as i128 + un2, a.b as i128, a.c as i128, a.d as i128 + un2];
        if num.iter().all(|x| x % un1 == 0) {
            let e: Vec<i64> = num.iter().map(|x| (x / un1) as i64).collect();
            if let Ok(b) = UnimodularMatrix::new(e[0], e[1], e[2], e[3]) {
                return Ok(Some((b, n)));
            }
        }
    }
    Ok(None)
}

pub fn is_primitive(a: &UnimodularMatrix) -> Result<bool, GeodesicError> {
    Ok(primitive_root(a)?.is_none())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminantData {
    pub d: i128,
    pub in_d_r: bool,
    /// Distinct odd prime factors of `d`.
    pub lambda: u32,
    /// Number of genera `ν(d)`; zero outside `𝒟_ℛ`.
    pub nu: u64,
    pub pell_u0: BigInt,
    pub pell_v0: BigInt,
    pub alpha_d: f64,
    /// `v` in `T² − 4 = v² d`.
    pub v: i128,
}

/// Discriminant of the primitive form behind the fixed-point form `(c, d − a, −b)` of `A`.
pub fn discriminant_of(a: &UnimodularMatrix) -> Result<DiscriminantData, GeodesicError> {
    let t = a.trace();
    if t <= 2 {
        return Err(GeodesicError::NotHyperbolic(t));
    }
    let (fa, fb, fc) = (a.c as i128, a.d as i128 - a.a as i128, -(a.b as i128));
    let content = fa.gcd(&fb).gcd(&fc);
    let disc = (fb * fb - 4 * fa * fc) / (content * content);
    debug_assert_eq!(disc * content * content, t * t - 4);
    let factors = factorize(disc as u128);
    let class = d_r_class(&factors);
    let lambda = factors.iter().filter(|(p, _)| *p != 2).count() as u32;
    let (u0, v0) = pell_fundamental(disc)?;
    let alpha_d = alpha_of(disc, &u0, &v0);
    Ok(DiscriminantData {
        d: disc,
        in_d_r: class.is_some(),
        lambda,
        nu: class.map_or(0, |c| c.1),
        pell_u0: u0,
        pell_v0: v0,
        alpha_d,
        v: content,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> UnimodularMatrix {
        UnimodularMatrix::new(a, b, c, d).unwrap()
    }

    #[test]
    fn symmetrize_examples() {
        let l = symmetrize(&SemigroupElement::from_word("L").unwrap()).unwrap();
        assert_eq!(l.a, m(1, 1, 1, 2));
        assert_eq!(l.trace, 3);
        assert!((l.length - 1.924847).abs() < 1e-6);
        let r = symmetrize(&SemigroupElement::from_word("R").unwrap()).unwrap();
        assert_eq!(r.a, m(2, 1, 1, 1));
        assert_eq!(r.length, l.length);
        let ll = symmetrize(&SemigroupElement::from_word("LL").unwrap()).unwrap();
        assert_eq!(ll.a, m(1, 2, 2, 5));
        assert_eq!(ll.trace, 6);
    }

    #[test]
    fn primitivity_examples() {
        assert!(is_primitive(&m(1, 1, 1, 2)).unwrap());
        assert_eq!(primitive_root(&m(2, 3, 3, 5)).unwrap(), Some((m(1, 1, 1, 2), 2)));
        assert!(primitive_root(&UnimodularMatrix::IDENTITY).is_err());
        // (1 1; 1 2)^6 has roots of order 2, 3 and 6; the largest is reported
        let b = m(1, 1, 1, 2);
        let mut p = b;
        for _ in 1..6 {
            p = p.checked_mul(&b).unwrap();
        }
        assert_eq!(primitive_root(&p).unwrap(), Some((b, 6)));
    }

    #[test]
    fn discriminant_examples() {
        let d = discriminant_of(&m(1, 1, 1, 2)).unwrap();
        assert_eq!((d.d, d.in_d_r, d.lambda, d.nu, d.v), (5, true, 1, 1, 1));
        let d = discriminant_of(&m(1, 2, 2, 5)).unwrap();
        assert_eq!((d.d, d.in_d_r, d.lambda, d.nu, d.v), (8, true, 0, 1, 2));
        let d = discriminant_of(&m(2, 3, 3, 5)).unwrap();
        assert_eq!((d.d, d.v), (5, 3));
        assert!((d.alpha_d - 2.618034).abs() < 1e-6);
    }
}

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::CoreError;
use crate::invariants::invariants;
use crate::matrix::UnimodularMatrix;

/// `Φ(g) = Z/Y` as an exact rational.
pub fn phi_exact(g: &UnimodularMatrix) -> Result<BigRational, CoreError> {
    let inv = invariants(g)?;
    Ok(BigRational::new(BigInt::from(inv.z), BigInt::from(inv.y)))
}

fn xi_parts_i128(x: i128, y: i128, mx: i128, my: i128, mz: i128) -> Option<(i128, i128)> {
    let xy = x.checked_mul(y)?;
    let xx = x.checked_mul(x)?;
    let yy = y.checked_mul(y)?;
    let num = xy.checked_mul(my.checked_sub(mx)?)?.checked_add(xx.checked_sub(yy)?.checked_mul(mz)?)?;
    let q = xx.checked_mul(mx)?.checked_add(yy.checked_mul(my)?)?.checked_add(xy.checked_mul(mz)?.checked_mul(2)?)?;
    let den = xx.checked_add(yy)?.checked_mul(q)?;
    Some((num, den))
}

fn xi_parts_big(x: i128, y: i128, mx: i128, my: i128, mz: i128) -> (BigInt, BigInt) {
    let (x, y) = (BigInt::from(x), BigInt::from(y));
    let (mx, my, mz) = (BigInt::from(mx), BigInt::from(my), BigInt::from(mz));
    let xy = &x * &y;
    let xx = &x * &x;
    let yy = &y * &y;
    let num = &xy * (&my - &mx) + (&xx - &yy) * &mz;
    let q = &xx * &mx + &yy * &my + BigInt::from(2) * &xy * &mz;
    let den = (&xx + &yy) * q;
    (num, den)
}

/// The shift function
/// `Ξ_M(x, y) = (xy(Y−X) + (x²−y²)Z) / ((x²+y²)(x²X + y²Y + 2xyZ))`
/// as an exact rational. Uses checked `i128` arithmetic and falls back to big
/// integers if any intermediate overflows.
pub fn xi_shift(m: &UnimodularMatrix, x: i64, y: i64) -> Result<BigRational, CoreError> {
    if x == 0 && y == 0 {
        return Err(CoreError::ZeroVector);
    }
    let inv = invariants(m)?;
    let (x, y) = (x as i128, y as i128);
    let (num, den) = match xi_parts_i128(x, y, inv.x, inv.y, inv.z) {
        Some((n, d)) => (BigInt::from(n), BigInt::from(d)),
        None => xi_parts_big(x, y, inv.x, inv.y, inv.z),
    };
    Ok(BigRational::new(num, den))
}

/// Floating-point `Ξ_M(x, y)` for real arguments.
pub fn xi_shift_f64(mx: f64, my: f64, mz: f64, x: f64, y: f64) -> f64 {
    let num = x * y * (my - mx) + (x * x - y * y) * mz;
    let den = (x * x + y * y) * (x * x * mx + y * y * my + 2.0 * x * y * mz);
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn known_values() {
        assert_eq!(xi_shift(&UnimodularMatrix::R, 1, 1).unwrap(), r(-1, 10));
        assert_eq!(xi_shift(&UnimodularMatrix::L, 1, 1).unwrap(), r(1, 10));
    }

    #[test]
    fn eta_reflection() {
        let m = UnimodularMatrix::from_word("LR").unwrap();
        let lhs = xi_shift(&m.eta_conjugate(), 3, 2).unwrap();
        let rhs = -xi_shift(&m, 2, 3).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn shift_identity_for_l() {
        // γ = (1 0; 1 1), γL = (1 0; 2 1)
        let g = UnimodularMatrix::L;
        let gm = g.checked_mul(&UnimodularMatrix::L).unwrap();
        let lhs = phi_exact(&g).unwrap() - phi_exact(&gm).unwrap();
        assert_eq!(lhs, xi_shift(&UnimodularMatrix::L, g.c, g.d).unwrap());
    }

    #[test]
    fn big_fallback_agrees() {
        let m = UnimodularMatrix::from_word("LRRLLLRLRRRLLRLRLLLRRRLRLRLLLLRRRLLRL").unwrap();
        let inv = invariants(&m).unwrap();
        let (x, y) = (1_000_003i128 * 1_000_000, 999_999i128 * 1_000_000);
        assert!(xi_parts_i128(x, y, inv.x, inv.y, inv.z).is_none());
        let v = xi_shift(&m, x as i64, y as i64).unwrap();
        assert!(!v.is_zero());
    }

    #[test]
    fn zero_vector_rejected() {
        assert_eq!(xi_shift(&UnimodularMatrix::L, 0, 0), Err(CoreError::ZeroVector));
    }

    #[test]
    fn float_version_matches() {
        let v = xi_shift_f64(1.0, 2.0, 1.0, 1.0, 1.0);
        assert!((v - 0.1).abs() < 1e-15);
    }
}

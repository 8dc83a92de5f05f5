use crate::error::CoreError;
use crate::matrix::UnimodularMatrix;

/// Quadrant of the upper half-plane containing `g·i`, split by `Re z = 0` and `|z| = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quadrant {
    I,
    II,
    III,
    IV,
}

/// Which of the eight images `±γ, ±γs, ±γ̃, ±γ̃s` was taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Identity,
    Neg,
    S,
    NegS,
    Tilde,
    NegTilde,
    TildeS,
    NegTildeS,
}

impl Symmetry {
    pub const ALL: [Symmetry; 8] = [
        Symmetry::Identity,
        Symmetry::Neg,
        Symmetry::S,
        Symmetry::NegS,
        Symmetry::Tilde,
        Symmetry::NegTilde,
        Symmetry::TildeS,
        Symmetry::NegTildeS,
    ];

    pub fn apply(&self, g: &UnimodularMatrix) -> UnimodularMatrix {
        // γs = (b −a; d −c)
        let times_s = |m: UnimodularMatrix| UnimodularMatrix { a: m.b, b: -m.a, c: m.d, d: -m.c };
        match self {
            Symmetry::Identity => *g,
            Symmetry::Neg => g.neg(),
            Symmetry::S => times_s(*g),
            Symmetry::NegS => times_s(*g).neg(),
            Symmetry::Tilde => g.tilde(),
            Symmetry::NegTilde => g.tilde().neg(),
            Symmetry::TildeS => times_s(g.tilde()),
            Symmetry::NegTildeS => times_s(g.tilde()).neg(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadrantTag {
    /// Quadrant of the original `g·i`.
    pub quadrant: Quadrant,
    /// Whether the mirror `z ↦ −z̄`, i.e. `(a b; c d) ↦ (a −b; −c d)`, was applied first.
    /// The eight symmetries alone only reach points in the right half-plane.
    pub mirrored: bool,
    pub symmetry: Symmetry,
}

/// Conjugation by `diag(1, −1)`; sends `g·i` to `−conj(g·i)` and `θ` to `−θ`.
pub fn mirror(g: &UnimodularMatrix) -> UnimodularMatrix {
    UnimodularMatrix { a: g.a, b: -g.b, c: -g.c, d: g.d }
}

/// Membership in `Γ_I`: nonnegative entries and `0 ≤ b/d < a/c ≤ 1`, via cross-products.
pub fn is_gamma_one(g: &UnimodularMatrix) -> bool {
    let (a, b, c, d) = (g.a as i128, g.b as i128, g.c as i128, g.d as i128);
    g.is_nonnegative() && c > 0 && d > 0 && b * c < a * d && a <= c
}

fn is_fixing_i(g: &UnimodularMatrix) -> bool {
    let (a, b, c, d) = (g.a, g.b, g.c, g.d);
    (a.abs() == 1 && b == 0 && c == 0 && d == a) || (a == 0 && d == 0 && b.abs() == 1 && c == -b)
}

pub fn quadrant_of(g: &UnimodularMatrix) -> Result<Quadrant, CoreError> {
    let inv = crate::invariants::invariants(g)?;
    if inv.z == 0 || inv.x == inv.y {
        return Err(CoreError::NoQuadrantRepresentative);
    }
    Ok(match (inv.z > 0, inv.x < inv.y) {
        (true, true) => Quadrant::I,
        (true, false) => Quadrant::II,
        (false, false) => Quadrant::III,
        (false, true) => Quadrant::IV,
    })
}

/// The unique image of `g` under the eight symmetries lying in `Γ_I`.
pub fn canonicalize(g: &UnimodularMatrix) -> Result<(UnimodularMatrix, QuadrantTag), CoreError> {
    if is_fixing_i(g) {
        return Err(CoreError::NoQuadrantRepresentative);
    }
    let quadrant = quadrant_of(g)?;
    let mirrored = matches!(quadrant, Quadrant::III | Quadrant::IV);
    let base = if mirrored { mirror(g) } else { *g };
    for sym in Symmetry::ALL {
        let h = sym.apply(&base);
        if is_gamma_one(&h) {
            return Ok((h, QuadrantTag { quadrant, mirrored, symmetry: sym }));
        }
    }
    Err(CoreError::NoQuadrantRepresentative)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> UnimodularMatrix {
        UnimodularMatrix::new(a, b, c, d).unwrap()
    }

    #[test]
    fn r_goes_to_l_via_tilde() {
        let (h, tag) = canonicalize(&m(1, 1, 0, 1)).unwrap();
        assert_eq!(h, m(1, 0, 1, 1));
        assert_eq!(tag.symmetry, Symmetry::Tilde);
        assert_eq!(tag.quadrant, Quadrant::II);
    }

    #[test]
    fn left_half_plane_is_mirrored() {
        let (h, tag) = canonicalize(&m(1, 0, -1, 1)).unwrap();
        assert_eq!(h, m(1, 0, 1, 1));
        assert!(tag.mirrored);
        assert_eq!(tag.quadrant, Quadrant::IV);
    }

    #[test]
    fn negated_l() {
        let (h, tag) = canonicalize(&m(-1, 0, -1, -1)).unwrap();
        assert_eq!(h, m(1, 0, 1, 1));
        assert_eq!(tag.symmetry, Symmetry::Neg);
        assert_eq!(tag.quadrant, Quadrant::I);
    }

    #[test]
    fn identity_and_s_have_no_representative() {
        for g in [UnimodularMatrix::IDENTITY, UnimodularMatrix::S, UnimodularMatrix::S.neg()] {
            assert_eq!(canonicalize(&g), Err(CoreError::NoQuadrantRepresentative));
        }
    }

    #[test]
    fn exactly_one_image_in_gamma_one() {
        let mut checked = 0;
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                for c in -6i64..=6 {
                    for d in -6i64..=6 {
                        let Ok(g) = UnimodularMatrix::new(a, b, c, d) else { continue };
                        if is_fixing_i(&g) {
                            continue;
                        }
                        let count =
                            |h: &UnimodularMatrix| Symmetry::ALL.iter().filter(|s| is_gamma_one(&s.apply(h))).count();
                        let right = g.a as i128 * g.c as i128 + g.b as i128 * g.d as i128 > 0;
                        if right {
                            assert_eq!(count(&g), 1, "{g}");
                            assert_eq!(count(&mirror(&g)), 0, "{g}");
                        } else {
                            assert_eq!(count(&g), 0, "{g}");
                            assert_eq!(count(&mirror(&g)), 1, "{g}");
                        }
                        let (h, tag) = canonicalize(&g).unwrap();
                        assert!(is_gamma_one(&h));
                        assert_eq!(tag.mirrored, !right);
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 100);
    }
}

use crate::error::ExteriorError;

/// A point of `(0,1]²`; the triangle `𝒯` is the part with `x + y > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrianglePoint {
    pub x: f64,
    pub y: f64,
}

impl TrianglePoint {
    pub fn new(x: f64, y: f64) -> TrianglePoint {
        TrianglePoint { x, y }
    }

    pub fn in_square(&self) -> bool {
        self.x > 0.0 && self.x <= 1.0 && self.y > 0.0 && self.y <= 1.0
    }

    pub fn in_triangle(&self) -> bool {
        self.in_square() && self.x + self.y > 1.0
    }
}

/// `⌊r⌋`, except that values within rounding of an integer snap to it.
///
/// The chain digits are floors of ratios like `(Q + q)/q′` evaluated on `q/Q`; when the
/// exact ratio is an integer the float can land one ulp below it.
pub(crate) fn digit_floor(r: f64) -> i64 {
    let n = r.round();
    if (r - n).abs() <= 1e-12 * n.abs().max(1.0) {
        n as i64
    } else {
        r.floor() as i64
    }
}

/// `T(x, y) = (y, ⌊(1+x)/y⌋ y − x)`.
pub fn triangle_map(p: TrianglePoint) -> Result<TrianglePoint, ExteriorError> {
    if !p.in_square() {
        return Err(ExteriorError::OutOfSquare(p.x, p.y));
    }
    let k = digit_floor((1.0 + p.x) / p.y) as f64;
    Ok(TrianglePoint { x: p.y, y: k * p.y - p.x })
}

/// `T⁻¹(x, y) = (⌊(1+y)/x⌋ x − y, x)` on `𝒯`.
pub fn triangle_map_inverse(p: TrianglePoint) -> Result<TrianglePoint, ExteriorError> {
    if !p.in_square() {
        return Err(ExteriorError::OutOfSquare(p.x, p.y));
    }
    if !p.in_triangle() {
        return Err(ExteriorError::NotInTriangle(p.x, p.y));
    }
    let k = digit_floor((1.0 + p.y) / p.x) as f64;
    Ok(TrianglePoint { x: k * p.x - p.y, y: p.x })
}

use crate::error::ExteriorError;
use crate::triangle::digit_floor;

/// `L_i ≤ 1` holds identically along the chain; the slack only absorbs rounding when
/// `L_i = 1` exactly (a Farey denominator equal to `Q`).
const UNIT_SLACK: f64 = 1e-12;

/// The linear forms `L_{−1}, …, L_{ℓ+1}` at a point, with the floor digits `K_1..K_ℓ`
/// and the closing digit `K`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearChain {
    pub ell: usize,
    pub k: i64,
    /// `l[i + 1] = L_i`, so `l[0] = x`, `l[1] = y`.
    pub l: Vec<f64>,
    pub ks: Vec<i64>,
}

impl LinearChain {
    /// `L_i` for `−1 ≤ i ≤ ℓ+1`.
    pub fn at(&self, i: i64) -> f64 {
        self.l[(i + 1) as usize]
    }

    pub fn last(&self) -> f64 {
        self.l[self.ell + 2]
    }

    pub fn upsilon(&self) -> f64 {
        upsilon_of(&self.l)
    }
}

fn upsilon_of(l: &[f64]) -> f64 {
    let n = l.len();
    let (x, y) = (l[0], l[1]);
    let mut s = x / (y * (x * x + y * y));
    for w in l[1..n - 1].windows(2) {
        s += 1.0 / (w[0] * w[1]);
    }
    let (a, b) = (l[n - 2], l[n - 1]);
    s + b / (a * (a * a + b * b))
}

fn check_args(x: f64, y: f64, k: i64) -> Result<(), ExteriorError> {
    if !(x > 0.0 && x <= 1.0 && y > 0.0 && y <= 1.0) {
        return Err(ExteriorError::OutOfSquare(x, y));
    }
    if k < 1 {
        return Err(ExteriorError::BadArgument(format!("K = {k} must be at least 1")));
    }
    Ok(())
}

/// Iterates the triangle map `ℓ` times from `(x, y)` and closes with `L_{ℓ+1} = K L_ℓ − L_{ℓ−1}`.
///
/// Fails with the first index where `0 < L_i ≤ 1` (or `L_{i−1} + L_i > 1`) is violated;
/// a non-positive `L_{ℓ+1}` is reported as index `ℓ+1`.
pub fn linear_chain(x: f64, y: f64, ell: usize, k: i64) -> Result<LinearChain, ExteriorError> {
    check_args(x, y, k)?;
    let mut l = Vec::with_capacity(ell + 3);
    let mut ks = Vec::with_capacity(ell);
    l.push(x);
    l.push(y);
    for i in 1..=ell {
        let (a, b) = (l[i - 1], l[i]);
        let ki = digit_floor((1.0 + a) / b);
        let li = ki as f64 * b - a;
        if !(li > 0.0 && li <= 1.0 + UNIT_SLACK) || b + li <= 1.0 {
            return Err(ExteriorError::ChainBreakdown { index: i as i64, value: li });
        }
        ks.push(ki);
        l.push(li);
    }
    let next = k as f64 * l[ell + 1] - l[ell];
    if next <= 0.0 {
        return Err(ExteriorError::ChainBreakdown { index: ell as i64 + 1, value: next });
    }
    l.push(next);
    Ok(LinearChain { ell, k, l, ks })
}

/// `Υ_{ℓ,K}(x, y)` with the digits taken from the point itself.
///
/// Not homogeneous in general: the digits depend on the scale. Within a fixed
/// cylinder use [`Cylinder::upsilon_at`], which is homogeneous of degree −2.
pub fn upsilon(x: f64, y: f64, ell: usize, k: i64) -> Result<f64, ExteriorError> {
    Ok(linear_chain(x, y, ell, k)?.upsilon())
}

/// What the body tests need from a chain, without allocating: `(Υ, L_ℓ, L_{ℓ+1})`,
/// or `None` when the chain breaks down.
pub(crate) fn chain_tail(x: f64, y: f64, ell: usize, k: i64) -> Option<(f64, f64, f64)> {
    let (mut a, mut b) = (x, y);
    let mut ups = x / (y * (x * x + y * y));
    for _ in 0..ell {
        let ki = digit_floor((1.0 + a) / b);
        let c = ki as f64 * b - a;
        if !(c > 0.0 && c <= 1.0 + UNIT_SLACK) || b + c <= 1.0 {
            return None;
        }
        ups += 1.0 / (b * c);
        a = b;
        b = c;
    }
    let next = k as f64 * b - a;
    if next <= 0.0 {
        return None;
    }
    ups += next / (b * (b * b + next * next));
    Some((ups, b, next))
}

/// A linear form `A x + B y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearForm {
    pub a: i64,
    pub b: i64,
}

impl LinearForm {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.a as f64 * x + self.b as f64 * y
    }
}

/// The cylinder `𝒯_𝐤` of points whose first `ℓ` digits are `𝐤`; on it every `L_i` is
/// the linear form stored in `forms[i + 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cylinder {
    pub digits: Vec<i64>,
    pub k: i64,
    pub forms: Vec<LinearForm>,
}

impl Cylinder {
    pub fn new(digits: &[i64], k: i64) -> Cylinder {
        let mut forms = vec![LinearForm { a: 1, b: 0 }, LinearForm { a: 0, b: 1 }];
        for &d in digits.iter().chain(std::iter::once(&k)) {
            let n = forms.len();
            let (p, q) = (forms[n - 2], forms[n - 1]);
            forms.push(LinearForm { a: d * q.a - p.a, b: d * q.b - p.b });
        }
        Cylinder { digits: digits.to_vec(), k, forms }
    }

    pub fn ell(&self) -> usize {
        self.digits.len()
    }

    pub fn values(&self, x: f64, y: f64) -> Vec<f64> {
        self.forms.iter().map(|f| f.eval(x, y)).collect()
    }

    /// `Υ` with the linear forms of this cylinder.
    pub fn upsilon_at(&self, x: f64, y: f64) -> f64 {
        upsilon_of(&self.values(x, y))
    }

    /// Whether the digits of `(x, y)` are exactly `𝐤` (the closing form is not checked).
    pub fn contains(&self, x: f64, y: f64) -> bool {
        let v = self.values(x, y);
        (1..=self.ell()).all(|i| {
            let (prev, cur) = (v[i], v[i + 1]);
            cur > 0.0 && cur <= 1.0 && prev + cur > 1.0
        })
    }
}

/// `Υ` computed with fixed digits; homogeneous of degree −2 in `(x, y)`.
pub fn upsilon_in_cylinder(x: f64, y: f64, digits: &[i64], k: i64) -> f64 {
    Cylinder::new(digits, k).upsilon_at(x, y)
}

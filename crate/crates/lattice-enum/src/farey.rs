#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FareyFraction {
    pub p: i64,
    pub q: i64,
}

impl FareyFraction {
    pub fn value(&self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

/// All reduced `p/q` with `0 ≤ p ≤ q ≤ Q`, ascending.
///
/// Uses the next-term recurrence: from consecutive `a/b < c/d`, the successor has
/// denominator `k d − b` with `k = ⌊(Q + b)/d⌋`.
pub fn farey_sequence(order: i64) -> Vec<FareyFraction> {
    assert!(order >= 1, "Farey order must be at least 1");
    let mut out = vec![FareyFraction { p: 0, q: 1 }];
    let (mut a, mut b, mut c, mut d) = (0i64, 1i64, 1i64, order);
    while c <= d {
        out.push(FareyFraction { p: c, q: d });
        if c == d {
            break;
        }
        let k = (order + b) / d;
        let (nc, nd) = (k * c - a, k * d - b);
        a = c;
        b = d;
        c = nc;
        d = nd;
    }
    out
}

/// Denominator successor in `F_Q` of the neighbour pair with denominators `(q_prev, q_cur)`.
pub fn next_denominator(order: i64, q_prev: i64, q_cur: i64) -> i64 {
    ((order + q_prev) / q_cur) * q_cur - q_prev
}

use hyperbolic_core::{invariants, UnimodularMatrix};
use rayon::prelude::*;

/// A Farey arc `p/q < pp/qq`, i.e. the matrix `(pp p; qq q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub p: i64,
    pub q: i64,
    pub pp: i64,
    pub qq: i64,
}

impl Arc {
    pub const ROOT: Arc = Arc { p: 0, q: 1, pp: 1, qq: 1 };

    pub fn matrix(&self) -> UnimodularMatrix {
        UnimodularMatrix { a: self.pp, b: self.p, c: self.qq, d: self.q }
    }

    pub fn from_matrix(m: &UnimodularMatrix) -> Arc {
        Arc { p: m.b, q: m.d, pp: m.a, qq: m.c }
    }

    pub fn norm_sq(&self) -> i64 {
        self.p * self.p + self.q * self.q + self.pp * self.pp + self.qq * self.qq
    }

    pub fn children(&self) -> [Arc; 2] {
        let (mp, mq) = (self.p + self.pp, self.q + self.qq);
        [Arc { p: self.p, q: self.q, pp: mp, qq: mq }, Arc { p: mp, q: mq, pp: self.pp, qq: self.qq }]
    }

    fn sort_key(&self) -> (i64, i64, i64, i64) {
        (self.q, self.qq, self.p, self.pp)
    }
}

/// A point of `Γ_I` with cached invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticePoint {
    pub matrix: UnimodularMatrix,
    pub norm_sq: i128,
    pub phi: f64,
    pub psi: f64,
    pub theta: f64,
}

impl LatticePoint {
    pub fn from_arc(arc: &Arc) -> LatticePoint {
        let matrix = arc.matrix();
        let inv = invariants(&matrix).expect("lattice entries are small");
        LatticePoint { matrix, norm_sq: inv.t, phi: inv.phi, psi: inv.psi, theta: inv.theta }
    }

    pub fn arc(&self) -> Arc {
        Arc::from_matrix(&self.matrix)
    }
}

/// Depth-first walk of the subtree at `root`, visiting every arc accepted by `keep`.
/// `keep` must be monotone: rejecting an arc rejects its whole subtree.
fn walk<K: Fn(&Arc) -> bool, V: FnMut(&Arc)>(root: Arc, keep: &K, visit: &mut V) {
    let mut stack = vec![root];
    while let Some(a) = stack.pop() {
        if !keep(&a) {
            continue;
        }
        visit(&a);
        let [l, r] = a.children();
        stack.push(r);
        stack.push(l);
    }
}

/// Expands the tree breadth-first until there are enough independent subtrees.
/// Returns the accepted arcs above the frontier and the frontier roots, both in a
/// fixed order.
fn frontier<K: Fn(&Arc) -> bool>(keep: &K, min_tasks: usize) -> (Vec<Arc>, Vec<Arc>) {
    let mut upper = Vec::new();
    let mut level = vec![Arc::ROOT];
    for _ in 0..32 {
        if level.len() >= min_tasks {
            break;
        }
        let mut next = Vec::with_capacity(level.len() * 2);
        for a in level.iter().filter(|a| keep(a)) {
            upper.push(*a);
            next.extend_from_slice(&a.children());
        }
        if next.is_empty() {
            return (upper, next);
        }
        level = next;
    }
    (upper, level)
}

/// Maps every accepted arc in a deterministic order (independent of thread count).
fn collect_tree<K, T, F>(keep: &K, map: &F) -> Vec<T>
where
    K: Fn(&Arc) -> bool + Sync,
    T: Send,
    F: Fn(&Arc) -> T + Sync,
{
    let (upper, roots) = frontier(keep, 512);
    let mut out: Vec<T> = upper.iter().map(map).collect();
    let parts: Vec<Vec<T>> = roots
        .par_iter()
        .map(|r| {
            let mut v = Vec::new();
            walk(*r, keep, &mut |a| v.push(map(a)));
            v
        })
        .collect();
    for p in parts {
        out.extend(p);
    }
    out
}

fn count_tree<K: Fn(&Arc) -> bool + Sync>(keep: &K) -> u64 {
    let (upper, roots) = frontier(keep, 512);
    let below: u64 = roots
        .par_iter()
        .map(|r| {
            let mut n = 0u64;
            walk(*r, keep, &mut |_| n += 1);
            n
        })
        .sum();
    upper.len() as u64 + below
}

fn ball_keep(order: i64) -> impl Fn(&Arc) -> bool + Sync {
    let bound = order * order;
    move |a: &Arc| a.norm_sq() <= bound
}

fn entry_keep(order: i64) -> impl Fn(&Arc) -> bool + Sync {
    move |a: &Arc| a.q <= order && a.qq <= order
}

/// Number of `γ ∈ Γ_I` with `‖γ‖ ≤ Q` (closed ball), without materializing them.
pub fn count_ball(order: i64) -> u64 {
    count_tree(&ball_keep(order))
}

/// Visits every arc of the ball, possibly from several threads at once.
pub fn visit_ball<V: Fn(&Arc) + Sync>(order: i64, visit: V) {
    let keep = ball_keep(order);
    let (upper, roots) = frontier(&keep, 512);
    upper.iter().for_each(&visit);
    roots.par_iter().for_each(|r| walk(*r, &keep, &mut |a| visit(a)));
}

/// Maps every arc of the ball; output order is fixed (tree order), not sorted.
pub fn map_ball<T: Send, F: Fn(&Arc) -> T + Sync>(order: i64, map: F) -> Vec<T> {
    collect_tree(&ball_keep(order), &map)
}

/// The ball `{γ ∈ Γ_I : ‖γ‖² ≤ Q²}`, sorted by `(q, q′, p, p′)`.
pub fn enumerate_ball(order: i64) -> Vec<LatticePoint> {
    assert!(order >= 2, "ball radius must be at least 2");
    let mut arcs = collect_tree(&ball_keep(order), &|a: &Arc| *a);
    arcs.sort_by_key(Arc::sort_key);
    arcs.iter().map(LatticePoint::from_arc).collect()
}

/// `ℜ_Q`: all of `Γ_I` with entries at most `Q`, sorted by `(q, q′, p, p′)`.
pub fn enumerate_entry_bounded(order: i64) -> Vec<LatticePoint> {
    assert!(order >= 1, "entry bound must be at least 1");
    let mut arcs = collect_tree(&entry_keep(order), &|a: &Arc| *a);
    arcs.sort_by_key(Arc::sort_key);
    arcs.iter().map(LatticePoint::from_arc).collect()
}

pub fn count_entry_bounded(order: i64) -> u64 {
    count_tree(&entry_keep(order))
}

use rayon::prelude::*;

use crate::error::StatsError;
use crate::samples::AngleSampleSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Empirical,
    Theoretical,
}

/// How the window and the count are scaled.
///
/// `SampleCount`: window `ξ/B`, the literal definition. `OrderSquared(Q)`: window
/// `ξ/Q²`, the scaling used by the lattice-point arguments. Both divide the count
/// by `B`. Since `B ∼ 3Q²/8`, the second curve at `ξ` approximates the first at `3ξ/8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    SampleCount,
    OrderSquared(i64),
}

impl Normalization {
    fn scale(self, b: usize) -> f64 {
        match self {
            Normalization::SampleCount => b as f64,
            Normalization::OrderSquared(q) => (q as f64) * (q as f64),
        }
    }

    pub fn describe(self) -> String {
        match self {
            Normalization::SampleCount => "window xi/B, count/B".to_string(),
            Normalization::OrderSquared(q) => format!("window xi/Q^2 (Q={q}), count/B"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationCurve {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub kind: CurveKind,
    pub note: String,
}

/// Counts ordered pairs `i ≠ j` with `0 ≤ v_j − v_i ≤ w_max`, routed to buckets by
/// `bucket(v_j − v_i)`. A tie is one unordered pair counted in both orders.
fn sweep<F>(values: &[f64], w_max: f64, buckets: usize, bucket: F) -> Vec<u64>
where
    F: Fn(f64) -> Option<usize> + Sync,
{
    const CHUNK: usize = 1 << 14;
    let n = values.len();
    (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut h = vec![0u64; buckets];
            for i in c * CHUNK..((c + 1) * CHUNK).min(n) {
                let vi = values[i];
                for &vj in &values[i + 1..] {
                    let d = vj - vi;
                    if d > w_max {
                        break;
                    }
                    if let Some(k) = bucket(d) {
                        h[k] += if d == 0.0 { 2 } else { 1 };
                    }
                }
            }
            h
        })
        .reduce(
            || vec![0u64; buckets],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// `R(ξ) = #{(i, j) : i ≠ j, 0 ≤ v_j − v_i ≤ ξ/B} / B` on every grid point, in one sweep.
pub fn pair_correlation(samples: &AngleSampleSet, grid: &[f64]) -> Result<CorrelationCurve, StatsError> {
    pair_correlation_with(samples, grid, Normalization::SampleCount)
}

pub fn pair_correlation_with(
    samples: &AngleSampleSet,
    grid: &[f64],
    norm: Normalization,
) -> Result<CorrelationCurve, StatsError> {
    let b = samples.b();
    if b == 0 {
        return Err(StatsError::Empty);
    }
    if grid.is_empty() || grid.iter().any(|x| !x.is_finite() || *x < 0.0) || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(StatsError::BadGrid);
    }
    let scale = norm.scale(b);
    let windows: Vec<f64> = grid.iter().map(|x| x / scale).collect();
    let w_max = *windows.last().unwrap();
    // bucket k collects differences in (w_{k−1}, w_k]
    let hist = sweep(samples.values(), w_max, windows.len(), |d| Some(windows.partition_point(|&w| w < d)));
    let mut acc = 0u64;
    let values = hist
        .iter()
        .map(|h| {
            acc += h;
            acc as f64 / b as f64
        })
        .collect();
    Ok(CorrelationCurve { grid: grid.to_vec(), values, kind: CurveKind::Empirical, note: norm.describe() })
}

/// Finite-difference derivative on a uniform grid: centred inside, one-sided at the ends.
pub fn density(curve: &CorrelationCurve) -> Result<CorrelationCurve, StatsError> {
    let (x, r) = (&curve.grid, &curve.values);
    let n = x.len();
    if n < 3 {
        return Err(StatsError::TooFewPoints(n));
    }
    let h = (x[n - 1] - x[0]) / (n - 1) as f64;
    if !(h > 0.0) || x.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h.max(1.0)) {
        return Err(StatsError::NonUniformGrid);
    }
    let values = (0..n)
        .map(|i| {
            let (lo, hi) = (i.saturating_sub(1), (i + 1).min(n - 1));
            (r[hi] - r[lo]) / (x[hi] - x[lo])
        })
        .collect();
    Ok(CorrelationCurve { grid: x.clone(), values, kind: curve.kind, note: format!("d/dxi of {}", curve.note) })
}

/// Histogram estimate of the pair correlation density.
///
/// Bins are centred on multiples of `width`: bin `k` covers `[(k−½)w, (k+½)w)`, so the
/// first bin is `[0, w/2)` and has half width. Each value is `count / (B · bin width)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityHistogram {
    pub width: f64,
    pub centers: Vec<f64>,
    pub values: Vec<f64>,
    pub note: String,
}

impl DensityHistogram {
    pub fn bin_of(&self, x: f64) -> Option<usize> {
        let k = (x / self.width + 0.5).floor();
        (k >= 0.0 && (k as usize) < self.centers.len()).then_some(k as usize)
    }

    pub fn bin_range(&self, k: usize) -> (f64, f64) {
        let c = self.centers[k];
        ((c - 0.5 * self.width).max(0.0), c + 0.5 * self.width)
    }

    /// True if bin `k` is strictly above both neighbours.
    pub fn is_local_max(&self, k: usize) -> bool {
        k > 0 && k + 1 < self.values.len() && self.values[k] > self.values[k - 1] && self.values[k] > self.values[k + 1]
    }
}

/// Bins `0..=round(x_max/width)`.
pub fn density_histogram(
    samples: &AngleSampleSet,
    width: f64,
    x_max: f64,
    norm: Normalization,
) -> Result<DensityHistogram, StatsError> {
    let b = samples.b();
    if b == 0 {
        return Err(StatsError::Empty);
    }
    if !(width > 0.0) || !(x_max > 0.0) || !width.is_finite() || !x_max.is_finite() {
        return Err(StatsError::BadBins);
    }
    let last = (x_max / width).round() as usize;
    let bins = last + 1;
    let scale = norm.scale(b);
    let top = (last as f64 + 0.5) * width;
    let hist = sweep(samples.values(), top / scale, bins, |d| {
        let k = (d * scale / width + 0.5).floor() as usize;
        (k < bins).then_some(k)
    });
    let centers: Vec<f64> = (0..bins).map(|k| k as f64 * width).collect();
    let values = hist
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            let w = if k == 0 { 0.5 * width } else { width };
            c as f64 / (b as f64 * w)
        })
        .collect();
    Ok(DensityHistogram { width, centers, values, note: format!("centred bins of width {width}; {}", norm.describe()) })
}

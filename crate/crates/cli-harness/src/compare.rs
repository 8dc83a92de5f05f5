use empirical_stats::{density_histogram, AngleSampleSet, DensityHistogram, Normalization};

use crate::error::HarnessError;
use crate::theory::TheoryModel;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareSettings {
    pub bin_width: f64,
    /// Bins whose centre lies in `[x_from, x_to]` enter the sup.
    pub x_from: f64,
    pub x_to: f64,
    pub tolerance: f64,
}

impl Default for CompareSettings {
    fn default() -> Self {
        CompareSettings { bin_width: 0.05, x_from: 0.05, x_to: 0.95, tolerance: 0.05 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinComparison {
    pub center: f64,
    pub lo: f64,
    pub hi: f64,
    pub empirical: f64,
    /// Theoretical density averaged over the bin, `(R₂(hi) − R₂(lo))/(hi − lo)`.
    pub theory: f64,
    pub theory_tail: f64,
}

impl BinComparison {
    pub fn diff(&self) -> f64 {
        self.empirical - self.theory
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub b_q: usize,
    pub bins: Vec<BinComparison>,
    pub sup_diff: f64,
    pub sup_at: f64,
    pub spike: f64,
    /// Histogram bin containing `spike`, if in range.
    pub spike_bin: Option<usize>,
    pub spike_is_local_max: bool,
    pub tolerance: f64,
    pub note: String,
}

impl Comparison {
    /// Sup bound met and the cusp bin stands out as a local maximum of the histogram.
    pub fn passes(&self) -> bool {
        self.sup_diff <= self.tolerance && self.spike_is_local_max
    }
}

/// Empirical histogram against bin-averaged theory.
pub fn compare(
    samples: &AngleSampleSet,
    norm: Normalization,
    model: &TheoryModel,
    settings: &CompareSettings,
) -> Result<Comparison, HarnessError> {
    let w = settings.bin_width;
    if !(w > 0.0) || !(settings.x_from >= 0.0) || !(settings.x_to > settings.x_from) {
        return Err(HarnessError::Usage("comparison range and bin width must be positive".into()));
    }
    // one bin past the range so the last compared bin can still be tested as a local max
    let hist: DensityHistogram = density_histogram(samples, w, settings.x_to + w, norm)?;
    let mut bins = Vec::new();
    for (k, &c) in hist.centers.iter().enumerate() {
        if c < settings.x_from - 1e-12 || c > settings.x_to + 1e-12 {
            continue;
        }
        let (lo, hi) = hist.bin_range(k);
        let (theory, theory_tail) = model.bin_average(lo, hi)?;
        bins.push(BinComparison { center: c, lo, hi, empirical: hist.values[k], theory, theory_tail });
    }
    let (sup_diff, sup_at) =
        bins.iter().map(|b| (b.diff().abs(), b.center)).fold((0.0, f64::NAN), |a, b| if b.0 > a.0 { b } else { a });
    let spike = model.spike_location();
    let spike_bin = hist.bin_of(spike);
    let spike_is_local_max = spike_bin.is_some_and(|k| hist.is_local_max(k));
    Ok(Comparison {
        b_q: samples.b(),
        bins,
        sup_diff,
        sup_at,
        spike,
        spike_bin,
        spike_is_local_max,
        tolerance: settings.tolerance,
        note: format!("{}; theory averaged over each bin", hist.note),
    })
}

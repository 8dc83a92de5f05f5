use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use empirical_stats::{Convention, Normalization};

use crate::compare::CompareSettings;
use crate::error::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Dump the ball of radius Q as CSV.
    Enumerate,
    /// Empirical pair correlation curve (and optionally the histogram density).
    Empirical,
    /// Limiting pair correlation curve and density with tail bounds.
    Theoretical,
    /// Reciprocal classes of the semigroup up to the cutoff, and both g2(0) sums.
    Geodesics,
    /// Empirical histogram at Q against the limiting density.
    Compare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    /// tan(theta/2)
    Tan,
    /// (2/pi) theta
    Angle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormalizationArg {
    /// window x/B_Q
    Bq,
    /// window x/Q^2
    Q2,
}

/// Pair correlation of hyperbolic lattice angles and reciprocal geodesics.
///
/// The x axis is the window variable of R_Q: pairs with difference at most x/B_Q (or x/Q^2
/// with --normalization q2), counted and divided by B_Q.
#[derive(Debug, Clone, Parser)]
#[command(name = "geocorr", version)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Ball radius Q (elements with ||g|| <= Q).
    #[arg(long = "q", default_value_t = 1000)]
    pub q: i64,
    /// Upper end of the x grid.
    #[arg(long, default_value_t = 1.2)]
    pub xi_max: f64,
    #[arg(long, default_value_t = 0.01)]
    pub grid_step: f64,
    /// Histogram bin width; bins are centred on multiples of the width.
    #[arg(long, default_value_t = 0.05)]
    pub bins: f64,
    /// Semigroup cutoff ||M||^2 <= N for the series, and the geodesic table.
    #[arg(long, default_value_t = 10_000)]
    pub cutoff_norm_sq: i64,
    /// Monte Carlo samples for the exterior-volume cross-check.
    #[arg(long, default_value_t = 1_000_000)]
    pub mc_samples: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ConventionArg::Angle)]
    pub convention: ConventionArg,
    #[arg(long, value_enum, default_value_t = NormalizationArg::Bq)]
    pub normalization: NormalizationArg,
    /// Main CSV output; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Density CSV (empirical and theoretical commands).
    #[arg(long)]
    pub density_out: Option<PathBuf>,
    /// Compare: bins with centre in [compare-from, compare-to] enter the sup.
    #[arg(long, default_value_t = 0.05)]
    pub compare_from: f64,
    #[arg(long, default_value_t = 0.95)]
    pub compare_to: f64,
    /// Compare: largest accepted sup |empirical - theory|.
    #[arg(long, default_value_t = 0.05)]
    pub tolerance: f64,
    /// Directory for cached sample sets and theoretical curves.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Evaluate theory beyond the validated x range.
    #[arg(long)]
    pub allow_extrapolation: bool,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: &str| Err(HarnessError::Usage(m.to_string()));
        if self.q < 2 {
            return bad("--q must be at least 2");
        }
        if !(self.grid_step > 0.0 && self.grid_step.is_finite()) {
            return bad("--grid-step must be positive");
        }
        if !(self.xi_max > 0.0 && self.xi_max.is_finite()) {
            return bad("--xi-max must be positive");
        }
        if !(self.bins > 0.0 && self.bins.is_finite()) {
            return bad("--bins must be positive");
        }
        if self.mc_samples < 10_000 {
            return bad("--mc-samples must be at least 10000");
        }
        if self.cutoff_norm_sq < 3 {
            return bad("--cutoff-norm-sq must be at least 3");
        }
        if !(self.tolerance >= 0.0) || !(self.compare_to > self.compare_from) || !(self.compare_from >= 0.0) {
            return bad("need 0 <= --compare-from < --compare-to and --tolerance >= 0");
        }
        Ok(())
    }

    pub fn convention(&self) -> Convention {
        match self.convention {
            ConventionArg::Tan => Convention::Tan,
            ConventionArg::Angle => Convention::Angle,
        }
    }

    pub fn normalization(&self) -> Normalization {
        match self.normalization {
            NormalizationArg::Bq => Normalization::SampleCount,
            NormalizationArg::Q2 => Normalization::OrderSquared(self.q),
        }
    }

    /// `0, h, 2h, …` up to `xi_max` (the last point is rounded to the nearest step). Points
    /// are rounded to 12 decimals so that `3 × 0.2` prints as `0.6`.
    pub fn grid(&self) -> Vec<f64> {
        let n = (self.xi_max / self.grid_step).round() as usize;
        (0..=n).map(|k| (k as f64 * self.grid_step * 1e12).round() / 1e12).collect()
    }

    pub fn compare_settings(&self) -> CompareSettings {
        CompareSettings {
            bin_width: self.bins,
            x_from: self.compare_from,
            x_to: self.compare_to,
            tolerance: self.tolerance,
        }
    }
}

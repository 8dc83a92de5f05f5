use lattice_enum::ball::map_ball;
use lattice_enum::LatticePoint;
use rayon::prelude::*;

use crate::error::StatsError;

/// Which coordinate represents an element: `tan(θ/2)` (equal to `Ψ`) or `(2/π)θ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    Tan,
    Angle,
}

impl Convention {
    pub fn value(self, pt: &LatticePoint) -> f64 {
        match self {
            Convention::Tan => pt.psi,
            Convention::Angle => std::f64::consts::FRAC_2_PI * pt.theta,
        }
    }
}

/// Sorted sample values; `B` is the length.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleSampleSet {
    values: Vec<f64>,
    convention: Convention,
}

impl AngleSampleSet {
    pub fn new(values: Vec<f64>, convention: Convention) -> Result<Self, StatsError> {
        if let Some(i) = values.windows(2).position(|w| !(w[0] <= w[1])) {
            return Err(StatsError::Unsorted(i + 1));
        }
        Ok(AngleSampleSet { values, convention })
    }

    /// Sorts first.
    pub fn from_unsorted(mut values: Vec<f64>, convention: Convention) -> Self {
        values.par_sort_unstable_by(f64::total_cmp);
        AngleSampleSet { values, convention }
    }

    /// All of `γ ∈ Γ_I` with `‖γ‖ ≤ Q`.
    pub fn from_ball(order: i64, convention: Convention) -> Self {
        let values = map_ball(order, |arc| convention.value(&LatticePoint::from_arc(arc)));
        Self::from_unsorted(values, convention)
    }

    pub fn from_points(points: &[LatticePoint], convention: Convention) -> Self {
        Self::from_unsorted(points.iter().map(|p| convention.value(p)).collect(), convention)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn b(&self) -> usize {
        self.values.len()
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Adds a constant to every value (order is kept).
    pub fn shifted(&self, c: f64) -> Self {
        AngleSampleSet { values: self.values.iter().map(|v| v + c).collect(), convention: self.convention }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unsorted() {
        assert_eq!(AngleSampleSet::new(vec![0.1, 0.3, 0.2], Convention::Tan), Err(StatsError::Unsorted(2)));
        assert!(AngleSampleSet::new(vec![0.1, 0.1, 0.2], Convention::Tan).is_ok());
    }

    #[test]
    fn ball_samples() {
        let s = AngleSampleSet::from_ball(50, Convention::Angle);
        assert_eq!(s.b() as u64, lattice_enum::count_ball(50));
        assert!(s.values().iter().all(|&v| v > 0.0 && v < 1.0));
        let t = AngleSampleSet::from_ball(50, Convention::Tan);
        // tan(θ/2) and (2/π)θ are both increasing in θ, so the ranks agree
        for (a, b) in s.values().iter().zip(t.values()) {
            assert!(((a * std::f64::consts::FRAC_PI_4).tan() - b).abs() < 1e-14);
        }
    }
}

use crate::HarnessError;
use serde::{Deserialize, Serialize};

/// Equal-width bins over a sample's range. `edges` has `n_bins + 1` entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinSpec {
    pub n_bins: usize,
    pub edges: Vec<f64>,
}

impl BinSpec {
    /// Bin of `v`: left-closed, right-open, except that the last bin also holds the
    /// top edge. Values outside the range clamp to the end bins.
    pub fn bin_of(&self, v: f64) -> usize {
        let interior = &self.edges[1..self.n_bins];
        interior.partition_point(|&e| e <= v)
    }
}

/// Splits `[min, max]` of `samples` into `n_bins` equal-width bins and assigns each
/// sample its bin index.
pub fn discretize_equal_width(samples: &[f64], n_bins: usize) -> Result<(Vec<usize>, BinSpec), HarnessError> {
    if n_bins < 2 {
        return Err(HarnessError::Degenerate(format!("need at least 2 bins, got {n_bins}")));
    }
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(HarnessError::Degenerate("non-finite sample".into()));
    }
    let (lo, hi) = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if !(hi > lo) {
        return Err(HarnessError::Degenerate("cannot discretize a constant sample".into()));
    }
    let width = (hi - lo) / n_bins as f64;
    let mut edges: Vec<f64> = (0..n_bins).map(|k| lo + k as f64 * width).collect();
    edges.push(hi);
    let spec = BinSpec { n_bins, edges };
    let symbols = samples.iter().map(|&v| spec.bin_of(v)).collect();
    Ok((symbols, spec))
}

use crate::discretize::discretize_equal_width;
use crate::HarnessError;
use pidnet_core::{pid, BivariatePid, InteractionNetwork, Joint3, PidKind, SampleBatch};
use rayon::prelude::*;

/// Empirical joint of three symbol sequences; alphabet sizes are `max symbol + 1`.
pub fn empirical_joint3(x: &[usize], y: &[usize], t: &[usize]) -> Result<Joint3, HarnessError> {
    if x.len() != y.len() || x.len() != t.len() {
        return Err(HarnessError::LengthMismatch(format!(
            "x, y, t have lengths {}, {}, {}",
            x.len(),
            y.len(),
            t.len()
        )));
    }
    if x.is_empty() {
        return Err(HarnessError::Degenerate("no samples".into()));
    }
    let size = |s: &[usize]| s.iter().max().copied().unwrap_or(0) + 1;
    let (nx, ny, nt) = (size(x), size(y), size(t));
    let mut counts = vec![0u64; nx * ny * nt];
    for ((&a, &b), &c) in x.iter().zip(y).zip(t) {
        counts[(a * ny + b) * nt + c] += 1;
    }
    let n = x.len() as f64;
    Ok(Joint3::from_table(nx, ny, nt, counts.iter().map(|&c| c as f64 / n).collect())?)
}

/// PIDs of one node pair against the response.
///
/// For an interaction pair `x` is the kernel's switch argument and `y` the other
/// node; otherwise `x < y`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairResult {
    pub batch: usize,
    pub x: usize,
    pub y: usize,
    pub is_interaction: bool,
    /// One decomposition per requested kind, in request order.
    pub pids: Vec<BivariatePid<f64>>,
    /// `I(T; X, Y)` of the discretized pair.
    pub mi_xy: f64,
}

impl PairResult {
    pub fn pid(&self, kind: PidKind) -> Option<&BivariatePid<f64>> {
        self.pids.iter().find(|d| d.kind == kind)
    }

    /// Unordered pair `(min, max)`.
    pub fn unordered(&self) -> (usize, usize) {
        (self.x.min(self.y), self.x.max(self.y))
    }
}

/// Discretizes every node and the response of `batch` into `n_bins` equal-width bins
/// and decomposes every unordered node pair. Results are in `(i, j)` lexicographic
/// order with `i < j`.
pub fn pairwise_pid_scan(
    batch: &SampleBatch,
    network: &InteractionNetwork,
    n_bins: usize,
    kinds: &[PidKind],
    batch_id: usize,
) -> Result<Vec<PairResult>, HarnessError> {
    let p = batch.n_nodes;
    let symbols = (0..p)
        .map(|node| discretize_equal_width(&batch.column(node), n_bins).map(|(s, _)| s))
        .collect::<Result<Vec<_>, _>>()?;
    let (t, _) = discretize_equal_width(&batch.response, n_bins)?;
    let pairs: Vec<(usize, usize)> = (0..p).flat_map(|i| (i + 1..p).map(move |j| (i, j))).collect();
    pairs
        .par_iter()
        .map(|&(i, j)| {
            let (x, y) = if network.spec().interactions.contains(&(j, i)) { (j, i) } else { (i, j) };
            let joint = empirical_joint3(&symbols[x], &symbols[y], &t)?;
            let pids: Vec<_> = kinds.iter().map(|&k| pid(&joint, k)).collect();
            let mi_xy = pidnet_core::mutual_information(&joint.sources_vs_target());
            Ok(PairResult {
                batch: batch_id,
                x,
                y,
                is_interaction: network.is_interaction(i, j),
                pids,
                mi_xy,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use pidnet_core::{conditional_entropy, entropy, mutual_information, Axis};

    #[test]
    fn single_sample_is_a_point_mass() {
        let j = empirical_joint3(&[1], &[0], &[2]).unwrap();
        assert_eq!(j.p(1, 0, 2), 1.0);
    }

    #[test]
    fn two_bit_copy_pattern() {
        let (x, y) = ([0, 0, 1, 1], [0, 1, 0, 1]);
        let t: Vec<usize> = x.iter().zip(&y).map(|(a, b)| 2 * a + b).collect();
        let j = empirical_joint3(&x, &y, &t).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..4 {
                    assert_eq!(j.p(a, b, c), if c == 2 * a + b { 0.25 } else { 0.0 });
                }
            }
        }
    }

    #[test]
    fn copy_relation_information() {
        let x = [0, 1, 2, 2, 1, 0, 0, 2, 1, 1, 1];
        let y = [0, 1, 1, 0, 1, 0, 1, 0, 1, 1, 0];
        let j = empirical_joint3(&x, &y, &x).unwrap();
        let xt = j.pair(Axis::X, Axis::T);
        assert!((mutual_information(&xt) - entropy(&j.marginal(Axis::X))).abs() < 1e-12);
        assert!(conditional_entropy(&xt).abs() < 1e-12);
    }

    #[test]
    fn length_mismatch() {
        assert!(matches!(empirical_joint3(&[0, 1], &[0], &[0, 1]), Err(HarnessError::LengthMismatch(_))));
    }
}

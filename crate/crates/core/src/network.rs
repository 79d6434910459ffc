//! Gaussian interaction networks: signed graph → covariance → samples → response.

use crate::error::ModelError;
use crate::kernel::KernelSpec;
use crate::mc::{shard_rng, SHARD_SIZE};
use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const DEFAULT_RHO: f64 = 0.3;
pub const NETWORK_NODES: usize = 50;

/// Undirected signed edge `(i, j, sign)` with `sign ∈ {+1, −1}`.
pub type Edge = (usize, usize, i8);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkSpec {
    pub n_nodes: usize,
    pub edges: Vec<Edge>,
    pub rho: f64,
    /// Directed `(x, y)` pairs: node `x` is the kernel's first argument.
    pub interactions: Vec<(usize, usize)>,
    pub kernel: KernelSpec,
    /// `(node, β)`: adds `β·X_node` to the response.
    pub mixed_terms: Vec<(usize, f64)>,
}

/// A validated network with its covariance factor.
#[derive(Debug, Clone)]
pub struct InteractionNetwork {
    spec: NetworkSpec,
    cov: DMatrix<f64>,
    chol_l: DMatrix<f64>,
}

/// `1 + ρ·λ_min(S)`, where `S` is the signed adjacency matrix, and the largest `ρ`
/// keeping the covariance positive definite.
fn pd_boundary(n: usize, edges: &[Edge]) -> Option<f64> {
    if edges.is_empty() {
        return None;
    }
    let mut s = DMatrix::<f64>::zeros(n, n);
    for &(i, j, sign) in edges {
        s[(i, j)] = sign as f64;
        s[(j, i)] = sign as f64;
    }
    let lambda_min = SymmetricEigen::new(s).eigenvalues.min();
    (lambda_min < 0.0).then(|| -1.0 / lambda_min)
}

impl InteractionNetwork {
    pub fn new(spec: NetworkSpec) -> Result<Self, ModelError> {
        let n = spec.n_nodes;
        if n == 0 {
            return Err(ModelError::Parameter("network needs at least one node".into()));
        }
        if !(spec.rho > 0.0 && spec.rho < 1.0) {
            return Err(ModelError::Parameter(format!("rho must lie in (0, 1), got {}", spec.rho)));
        }
        let mut cov = DMatrix::<f64>::identity(n, n);
        for &(i, j, sign) in &spec.edges {
            if i >= n || j >= n || i == j {
                return Err(ModelError::Parameter(format!("invalid edge ({i}, {j}) for {n} nodes")));
            }
            if sign != 1 && sign != -1 {
                return Err(ModelError::Parameter(format!("edge sign must be +1 or -1, got {sign}")));
            }
            if cov[(i, j)] != 0.0 {
                return Err(ModelError::Parameter(format!("duplicate edge ({i}, {j})")));
            }
            cov[(i, j)] = sign as f64 * spec.rho;
            cov[(j, i)] = sign as f64 * spec.rho;
        }
        for &(x, y) in &spec.interactions {
            if x >= n || y >= n || cov[(x, y)] == 0.0 {
                return Err(ModelError::Parameter(format!("interaction ({x}, {y}) is not an edge")));
            }
        }
        if let Some(&(node, _)) = spec.mixed_terms.iter().find(|(node, _)| *node >= n) {
            return Err(ModelError::Parameter(format!("mixed term on missing node {node}")));
        }
        let chol_l = match cov.clone().cholesky() {
            Some(c) => c.l(),
            None => {
                let bound = pd_boundary(n, &spec.edges).unwrap_or(f64::INFINITY);
                return Err(ModelError::NotPositiveDefinite(format!(
                    "covariance of {n} nodes with {} edges at rho = {} is not positive definite; \
                     this topology requires rho < {bound:.6}",
                    spec.edges.len(),
                    spec.rho
                )));
            }
        };
        Ok(InteractionNetwork { spec, cov, chol_l })
    }

    pub fn spec(&self) -> &NetworkSpec {
        &self.spec
    }

    pub fn n_nodes(&self) -> usize {
        self.spec.n_nodes
    }

    pub fn covariance(&self) -> &DMatrix<f64> {
        &self.cov
    }

    /// Largest admissible `rho` for this topology (`∞` when no edge constrains it).
    pub fn max_rho(&self) -> f64 {
        pd_boundary(self.spec.n_nodes, &self.spec.edges).unwrap_or(f64::INFINITY)
    }

    /// Unordered pair `(min, max)` of every interaction.
    pub fn interaction_pairs(&self) -> Vec<(usize, usize)> {
        self.spec.interactions.iter().map(|&(x, y)| (x.min(y), x.max(y))).collect()
    }

    pub fn is_interaction(&self, i: usize, j: usize) -> bool {
        self.spec.interactions.iter().any(|&(x, y)| (x, y) == (i, j) || (y, x) == (i, j))
    }

    /// `Σ g(x_i, x_j)` over interactions plus `Σ β x_s` over mixed terms.
    pub fn response(&self, row: &[f64]) -> f64 {
        let kernel = self.spec.kernel.build();
        self.response_with(kernel.as_ref(), row)
    }

    fn response_with(&self, kernel: &dyn crate::kernel::NfbiKernel, row: &[f64]) -> f64 {
        let mut t = 0.0;
        for &(x, y) in &self.spec.interactions {
            t += kernel.eval(row[x], row[y]);
        }
        for &(node, beta) in &self.spec.mixed_terms {
            t += beta * row[node];
        }
        t
    }
}

/// Row-major predictor matrix and the matching responses.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    pub n_samples: usize,
    pub n_nodes: usize,
    pub predictors: Vec<f64>,
    pub response: Vec<f64>,
    pub seed: u64,
}

impl SampleBatch {
    pub fn row(&self, k: usize) -> &[f64] {
        &self.predictors[k * self.n_nodes..(k + 1) * self.n_nodes]
    }

    pub fn column(&self, node: usize) -> Vec<f64> {
        (0..self.n_samples).map(|k| self.predictors[k * self.n_nodes + node]).collect()
    }
}

/// `n` i.i.d. rows of `N(0, Σ)` via the Cholesky factor, with responses.
pub fn sample(network: &InteractionNetwork, n: usize, seed: u64) -> SampleBatch {
    let p = network.n_nodes();
    let kernel = network.spec.kernel.build();
    let shards: Vec<(Vec<f64>, Vec<f64>)> = (0..n.div_ceil(SHARD_SIZE))
        .into_par_iter()
        .map(|s| {
            let len = SHARD_SIZE.min(n - s * SHARD_SIZE);
            let mut rng = shard_rng(seed, s as u64);
            let mut rows = Vec::with_capacity(len * p);
            let mut resp = Vec::with_capacity(len);
            let mut z = vec![0.0; p];
            for _ in 0..len {
                z.iter_mut().for_each(|v| *v = rng.sample(StandardNormal));
                let start = rows.len();
                for i in 0..p {
                    let mut acc = 0.0;
                    for k in 0..=i {
                        acc += network.chol_l[(i, k)] * z[k];
                    }
                    rows.push(acc);
                }
                resp.push(network.response_with(kernel.as_ref(), &rows[start..]));
            }
            (rows, resp)
        })
        .collect();
    let mut predictors = Vec::with_capacity(n * p);
    let mut response = Vec::with_capacity(n);
    for (rows, resp) in shards {
        predictors.extend(rows);
        response.extend(resp);
    }
    SampleBatch {
        n_samples: n,
        n_nodes: p,
        predictors,
        response,
        seed,
    }
}

/// Edges of a star with all-positive spokes.
fn star(hub: usize, spokes: impl IntoIterator<Item = usize>) -> Vec<Edge> {
    spokes.into_iter().map(|s| (s, hub, 1)).collect()
}

/// Hub of star `s` in Network A; its spokes are the next four nodes.
pub fn network_a_hub(s: usize) -> usize {
    5 * s
}

/// Fifty nodes, five 4-stars on nodes 0..25 and 25 isolated nodes. The four
/// spoke–hub pairs of star 0 interact through the sigmoidal kernel at `alpha`.
pub fn network_a(alpha: f64, rho: f64) -> Result<InteractionNetwork, ModelError> {
    let mut edges = Vec::new();
    for s in 0..5 {
        let hub = network_a_hub(s);
        edges.extend(star(hub, hub + 1..hub + 5));
    }
    let interactions = (1..5).map(|spoke| (spoke, 0)).collect();
    InteractionNetwork::new(NetworkSpec {
        n_nodes: NETWORK_NODES,
        edges,
        rho,
        interactions,
        kernel: KernelSpec::Sigmoidal { alpha },
        mixed_terms: Vec::new(),
    })
}

pub const NETWORK_B_Y1: usize = 0;
pub const NETWORK_B_Y2: usize = 11;

/// Two 10-stars with hubs `Y₁ = 0` (spokes 1..=10) and `Y₂ = 11` (spokes 12..=21) and
/// 28 isolated nodes. Spokes `1..=k` interact with `Y₁`; `β·Y₂` enters the response
/// linearly.
pub fn network_b(alpha: f64, beta: f64, k: usize, rho: f64) -> Result<InteractionNetwork, ModelError> {
    if !(1..=10).contains(&k) {
        return Err(ModelError::Parameter(format!("k must be in 1..=10, got {k}")));
    }
    let mut edges = star(NETWORK_B_Y1, 1..=10);
    edges.extend(star(NETWORK_B_Y2, 12..=21));
    InteractionNetwork::new(NetworkSpec {
        n_nodes: NETWORK_NODES,
        edges,
        rho,
        interactions: (1..=k).map(|spoke| (spoke, NETWORK_B_Y1)).collect(),
        kernel: KernelSpec::Sigmoidal { alpha },
        mixed_terms: vec![(NETWORK_B_Y2, beta)],
    })
}

/// The ten spoke–hub pairs `(X_j, Y₂)` of Network B, as unordered pairs.
pub fn network_b_false_pairs() -> Vec<(usize, usize)> {
    (12..=21).map(|j| (NETWORK_B_Y2, j)).collect()
}

/// Second-order Taylor coefficients of the Network A response around the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaylorCoefficients {
    pub dy_f: f64,
    pub dxy_f: f64,
    /// `|∂y f| + 4·|∂xy f|`.
    pub c: f64,
    /// `(∂y f / c, ∂xy f / c)`.
    pub normalized: (f64, f64),
}

pub fn taylor_coefficients(alpha: f64) -> TaylorCoefficients {
    let sig = |z: f64| 1.0 / (1.0 + (-z).exp());
    // 1/(1+e^α) = σ(−α) and e^α/(1+e^α)² = σ(α)·σ(−α), without overflow
    let dy_f = 4.0 * sig(-alpha);
    let dxy_f = sig(alpha) * sig(-alpha);
    let c = dy_f.abs() + 4.0 * dxy_f.abs();
    TaylorCoefficients {
        dy_f,
        dxy_f,
        c,
        normalized: (dy_f / c, dxy_f / c),
    }
}

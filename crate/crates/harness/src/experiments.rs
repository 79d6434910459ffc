//! The three network experiments.
//!
//! Every batch `b` is sampled with the seed `batch_seed(config.seed, b)`, and grid
//! points of one experiment reuse the same batch seeds, so neighbouring grid points
//! see the same predictor draws.

use crate::rank::{RankTable, Statistic};
use crate::scan::{pairwise_pid_scan, PairResult};
use crate::stats::{mean, pearson, quartiles, Quartiles};
use crate::HarnessError;
use pidnet_core::network::{network_b_false_pairs, DEFAULT_RHO, NETWORK_B_Y1, NETWORK_B_Y2};
use pidnet_core::{network_a, network_b, sample, taylor_coefficients, Ext, InteractionNetwork, PidKind, TaylorCoefficients};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Every paper-silent parameter of the experiments, with desk-scale defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub batches: usize,
    pub samples_per_batch: usize,
    pub bins: usize,
    /// Edge correlation of the network covariance.
    pub rho: f64,
    /// Sigmoid threshold for experiments 1 and 2.
    pub alpha: f64,
    /// Number of interacting spokes in Network B.
    pub k: usize,
    pub beta_grid: Vec<f64>,
    pub alpha_grid: Vec<f64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 1,
            batches: 20,
            samples_per_batch: 200,
            bins: 3,
            rho: DEFAULT_RHO,
            alpha: 0.0,
            k: 1,
            beta_grid: vec![0.25, 0.5, 1.0, 2.0, 4.0],
            alpha_grid: vec![-4.0, -2.0, 0.0, 2.0, 4.0],
        }
    }
}

impl ExperimentConfig {
    fn validate(&self) -> Result<(), HarnessError> {
        if self.batches == 0 || self.samples_per_batch < 2 {
            return Err(HarnessError::Degenerate("need at least one batch of two samples".into()));
        }
        Ok(())
    }
}

/// SplitMix64 finalizer, used to spread batch indices over the seed space.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn batch_seed(master: u64, batch: usize) -> u64 {
    splitmix64(master ^ splitmix64(batch as u64))
}

/// One batch's pair results and, per PID kind, the ranks of every statistic.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchScan {
    pub pairs: Vec<PairResult>,
    /// Indexed like [`BatchScan::kinds`].
    pub ranks: Vec<RankTable>,
    pub kinds: Vec<PidKind>,
}

impl BatchScan {
    pub fn ranks_for(&self, kind: PidKind) -> &RankTable {
        let idx = self.kinds.iter().position(|&k| k == kind).expect("kind was scanned");
        &self.ranks[idx]
    }
}

fn finite(e: Ext) -> f64 {
    e.to_float()
}

/// `[R, U_X, U_Y, S, MI]` of a pair under one kind.
pub fn pair_values(pair: &PairResult, kind: PidKind) -> [f64; 5] {
    let d = pair.pid(kind).expect("kind was scanned");
    [finite(d.r), finite(d.u_x), finite(d.u_y), finite(d.s), pair.mi_xy]
}

fn scan_batches(
    network: &InteractionNetwork,
    config: &ExperimentConfig,
    kinds: &[PidKind],
) -> Result<Vec<BatchScan>, HarnessError> {
    (0..config.batches)
        .map(|b| {
            let batch = sample(network, config.samples_per_batch, batch_seed(config.seed, b));
            let pairs = pairwise_pid_scan(&batch, network, config.bins, kinds, b)?;
            let ranks = kinds
                .iter()
                .map(|&k| {
                    let values: Vec<[f64; 5]> = pairs.iter().map(|p| pair_values(p, k)).collect();
                    RankTable::from_values(&values)
                })
                .collect();
            Ok(BatchScan {
                pairs,
                ranks,
                kinds: kinds.to_vec(),
            })
        })
        .collect()
}

/// Key of a statistic in summaries: `MI`, or e.g. `S_ipm`.
pub fn stat_key(stat: Statistic, kind: PidKind) -> String {
    match stat {
        Statistic::Mi => "MI".into(),
        s => format!("{}_{}", s.label(), kind.label()),
    }
}

/// Distribution of a statistic over interaction pairs versus every other pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Split {
    pub interaction: Option<Quartiles>,
    pub other: Option<Quartiles>,
}

fn collect_split(
    scans: &[BatchScan],
    value: impl Fn(&BatchScan, usize) -> f64,
    is_positive: impl Fn(&PairResult) -> bool,
    is_negative: impl Fn(&PairResult) -> bool,
) -> Split {
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for scan in scans {
        for (idx, pair) in scan.pairs.iter().enumerate() {
            if is_positive(pair) {
                pos.push(value(scan, idx));
            } else if is_negative(pair) {
                neg.push(value(scan, idx));
            }
        }
    }
    Split {
        interaction: quartiles(&pos),
        other: quartiles(&neg),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Experiment1Summary {
    /// Ranked scores, interaction pairs versus all other pairs.
    pub ranked: BTreeMap<String, Split>,
    /// Raw atom values in nats, same split.
    pub raw: BTreeMap<String, Split>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Experiment1 {
    pub config: ExperimentConfig,
    pub scans: Vec<BatchScan>,
    pub summary: Experiment1Summary,
}

/// Network A at `config.alpha`: ranked synergy and MI of the four true interactions
/// against every other pair.
pub fn run_experiment_1(config: &ExperimentConfig) -> Result<Experiment1, HarnessError> {
    config.validate()?;
    let network = network_a(config.alpha, config.rho)?;
    let scans = scan_batches(&network, config, &PidKind::ALL)?;
    let mut ranked = BTreeMap::new();
    let mut raw = BTreeMap::new();
    for kind in PidKind::ALL {
        for (s, stat) in Statistic::ALL.iter().enumerate() {
            let key = stat_key(*stat, kind);
            let yes = |p: &PairResult| p.is_interaction;
            let no = |p: &PairResult| !p.is_interaction;
            ranked.insert(key.clone(), collect_split(&scans, |sc, i| sc.ranks_for(kind).ranks[i][s], yes, no));
            raw.insert(key, collect_split(&scans, |sc, i| pair_values(&sc.pairs[i], kind)[s], yes, no));
        }
    }
    Ok(Experiment1 {
        config: config.clone(),
        scans,
        summary: Experiment1Summary { ranked, raw },
    })
}

/// Medians of ranked scores for the true pair(s) and the false candidates `(X_j, Y₂)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaSummary {
    pub beta: f64,
    /// Keys `S_imin`, `S_ipm`, `MI`.
    pub ranked: BTreeMap<String, Split>,
    /// `median S^min(true) > median S^min(false)`.
    pub s_min_separates: bool,
    /// `median S^pm(false) > median S^pm(true)`.
    pub s_pm_false_overtakes: bool,
    /// `median MI(false) > median MI(true)`.
    pub mi_false_overtakes: bool,
    /// Raw `U^min` of the spoke node (`U_spoke_imin`) and `S^min`, true versus false pairs.
    pub raw_imin: BTreeMap<String, Split>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BetaPoint {
    pub beta: f64,
    pub scans: Vec<BatchScan>,
    pub summary: BetaSummary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Experiment2 {
    pub config: ExperimentConfig,
    pub points: Vec<BetaPoint>,
}

fn medians(split: &Split) -> (f64, f64) {
    (
        split.interaction.map_or(f64::NAN, |q| q.median),
        split.other.map_or(f64::NAN, |q| q.median),
    )
}

/// Network B over `config.beta_grid`.
pub fn run_experiment_2(config: &ExperimentConfig) -> Result<Experiment2, HarnessError> {
    config.validate()?;
    let false_pairs = network_b_false_pairs();
    let points = config
        .beta_grid
        .iter()
        .map(|&beta| {
            let network = network_b(config.alpha, beta, config.k, config.rho)?;
            let scans = scan_batches(&network, config, &PidKind::ALL)?;
            let yes = |p: &PairResult| p.is_interaction;
            let no = |p: &PairResult| false_pairs.contains(&p.unordered());
            let mut ranked = BTreeMap::new();
            let stats = [
                (Statistic::S, PidKind::Imin),
                (Statistic::S, PidKind::Ipm),
                (Statistic::Mi, PidKind::Imin),
            ];
            for (stat, kind) in stats {
                let s = Statistic::ALL.iter().position(|&x| x == stat).unwrap();
                ranked.insert(
                    stat_key(stat, kind),
                    collect_split(&scans, |sc, i| sc.ranks_for(kind).ranks[i][s], yes, no),
                );
            }
            // unique information of the spoke, whichever side of the pair it sits on
            let spoke_u = |p: &PairResult| {
                let v = pair_values(p, PidKind::Imin);
                if p.x == NETWORK_B_Y1 || p.x == NETWORK_B_Y2 { v[2] } else { v[1] }
            };
            let mut raw_imin = BTreeMap::new();
            raw_imin.insert("U_spoke_imin".to_string(), collect_split(&scans, |sc, i| spoke_u(&sc.pairs[i]), yes, no));
            raw_imin.insert(
                stat_key(Statistic::S, PidKind::Imin),
                collect_split(&scans, |sc, i| pair_values(&sc.pairs[i], PidKind::Imin)[3], yes, no),
            );
            let (smin_t, smin_f) = medians(&ranked["S_imin"]);
            let (spm_t, spm_f) = medians(&ranked["S_ipm"]);
            let (mi_t, mi_f) = medians(&ranked["MI"]);
            Ok(BetaPoint {
                beta,
                scans,
                summary: BetaSummary {
                    beta,
                    ranked,
                    s_min_separates: smin_t > smin_f,
                    s_pm_false_overtakes: spm_f > spm_t,
                    mi_false_overtakes: mi_f > mi_t,
                    raw_imin,
                },
            })
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;
    Ok(Experiment2 {
        config: config.clone(),
        points,
    })
}

/// Mean atoms over interaction pairs at one `alpha`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaPoint {
    pub alpha: f64,
    /// Mean `I(T; X, Y)` over interaction pairs.
    pub mean_mi: f64,
    /// Mean `[R, U_X, U_Y, S]` per kind label, in nats.
    pub mean_atoms: BTreeMap<String, [f64; 4]>,
    /// `mean_atoms / mean_mi`.
    pub normalized: BTreeMap<String, [f64; 4]>,
    pub taylor: TaylorCoefficients,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Experiment3Summary {
    /// Pearson correlation of `U_Y^min / MI` with `∂y f / c(α)` over the grid.
    pub uy_min_taylor_correlation: f64,
    /// `(R^min + S^min) / MI` per grid point.
    pub rs_min: Vec<f64>,
    pub rs_min_increasing: bool,
    /// `(R^pm + S^pm) / MI` per grid point.
    pub rs_pm: Vec<f64>,
    pub rs_pm_range: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Experiment3 {
    pub config: ExperimentConfig,
    pub points: Vec<AlphaPoint>,
    pub scans: Vec<Vec<BatchScan>>,
    pub summary: Experiment3Summary,
}

/// Network A over `config.alpha_grid`.
pub fn run_experiment_3(config: &ExperimentConfig) -> Result<Experiment3, HarnessError> {
    config.validate()?;
    let mut points = Vec::new();
    let mut all_scans = Vec::new();
    for &alpha in &config.alpha_grid {
        let network = network_a(alpha, config.rho)?;
        let scans = scan_batches(&network, config, &PidKind::ALL)?;
        let inter: Vec<&PairResult> = scans.iter().flat_map(|s| s.pairs.iter()).filter(|p| p.is_interaction).collect();
        let mean_mi = mean(&inter.iter().map(|p| p.mi_xy).collect::<Vec<_>>());
        let mut mean_atoms = BTreeMap::new();
        let mut normalized = BTreeMap::new();
        for kind in PidKind::ALL {
            let mut m = [0.0; 4];
            for (s, slot) in m.iter_mut().enumerate() {
                *slot = mean(&inter.iter().map(|p| pair_values(p, kind)[s]).collect::<Vec<_>>());
            }
            mean_atoms.insert(kind.label().to_string(), m);
            normalized.insert(kind.label().to_string(), m.map(|v| v / mean_mi));
        }
        points.push(AlphaPoint {
            alpha,
            mean_mi,
            mean_atoms,
            normalized,
            taylor: taylor_coefficients(alpha),
        });
        all_scans.push(scans);
    }
    let uy: Vec<f64> = points.iter().map(|p| p.normalized["imin"][2]).collect();
    let dy: Vec<f64> = points.iter().map(|p| p.taylor.normalized.0).collect();
    let rs_min: Vec<f64> = points.iter().map(|p| p.normalized["imin"][0] + p.normalized["imin"][3]).collect();
    let rs_pm: Vec<f64> = points.iter().map(|p| p.normalized["ipm"][0] + p.normalized["ipm"][3]).collect();
    let range = rs_pm.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - rs_pm.iter().cloned().fold(f64::INFINITY, f64::min);
    let summary = Experiment3Summary {
        uy_min_taylor_correlation: pearson(&uy, &dy),
        rs_min_increasing: rs_min.windows(2).all(|w| w[1] > w[0]),
        rs_min,
        rs_pm_range: range,
        rs_pm,
    };
    Ok(Experiment3 {
        config: config.clone(),
        points,
        scans: all_scans,
        summary,
    })
}

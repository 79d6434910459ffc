//! Monte Carlo estimators of unique information for noise-free interactions
//! `T = g(X, Y)` with standard normal predictors of correlation `rho`.
//!
//! Sampling is split into fixed-size shards. Shard `s` draws from
//! `ChaCha8Rng::seed_from_u64(seed)` on stream `s`, and shard results are merged in
//! shard order, so every estimate depends only on `(seed, n)` and not on the number
//! of worker threads.

use crate::error::ModelError;
use crate::ext_real::ExtReal;
use crate::gaussian::{
    linear_imin_pid, linear_ipm_pid, linear_specific_info, specificity_constant, LinearInteraction,
};
use crate::kernel::{KernelSpec, NfbiKernel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const SHARD_SIZE: usize = 1 << 16;
pub const MIN_SAMPLES_PM: usize = 1_000;
pub const MIN_SAMPLES_MIN: usize = 10_000;
pub const MIN_T_BINS: usize = 10;
pub const DEFAULT_T_BINS: usize = 50;
pub const MAX_EXCLUDED_FRACTION: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub n_samples: usize,
    pub seed: u64,
    /// Points dropped because a partial derivative vanished.
    pub excluded: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl McEstimate {
    /// `|value − target| ≤ k·SE`.
    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.value - target).abs() <= k * self.std_error
    }
}

/// Count, mean and sum of squared deviations; merged with Chan's update.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: usize,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, v: f64) {
        self.n += 1;
        let d = v - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (v - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        let (na, nb) = (self.n as f64, other.n as f64);
        Moments {
            n,
            mean: self.mean + d * nb / n as f64,
            m2: self.m2 + other.m2 + d * d * na * nb / n as f64,
        }
    }

    fn variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }

    fn std_error(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            (self.variance() / self.n as f64).sqrt()
        }
    }
}

fn check_rho(rho: f64) -> Result<(), ModelError> {
    if rho.abs() < 1.0 {
        Ok(())
    } else {
        Err(ModelError::Correlation(rho))
    }
}

fn check_samples(n: usize, min: usize) -> Result<(), ModelError> {
    if n < min {
        Err(ModelError::TooFewSamples { got: n, min })
    } else {
        Ok(())
    }
}

fn check_exclusions(excluded: usize, total: usize) -> Result<(), ModelError> {
    if excluded as f64 > MAX_EXCLUDED_FRACTION * total as f64 {
        Err(ModelError::TooManyExclusions {
            excluded,
            total,
            limit: MAX_EXCLUDED_FRACTION,
        })
    } else {
        Ok(())
    }
}

/// The deterministic generator for shard `shard` of a run seeded with `seed`.
pub fn shard_rng(seed: u64, shard: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    rng
}

fn shard_ranges(n: usize) -> Vec<(u64, usize)> {
    (0..n.div_ceil(SHARD_SIZE))
        .map(|s| (s as u64, SHARD_SIZE.min(n - s * SHARD_SIZE)))
        .collect()
}

/// Runs `body` on every `(x, y)` draw of each shard in parallel and returns the
/// per-shard outputs in shard order.
fn map_shards<T: Send>(
    n: usize,
    seed: u64,
    rho: f64,
    body: impl Fn(&mut dyn Iterator<Item = (f64, f64)>) -> T + Sync,
) -> Vec<T> {
    let tail = (1.0 - rho * rho).sqrt();
    shard_ranges(n)
        .into_par_iter()
        .map(|(shard, len)| {
            let mut rng = shard_rng(seed, shard);
            let mut draws = (0..len).map(move |_| {
                let z1: f64 = rng.sample(StandardNormal);
                let z2: f64 = rng.sample(StandardNormal);
                (z1, rho * z1 + tail * z2)
            });
            body(&mut draws)
        })
        .collect()
}

/// Mean of `f(x, y)` over `n` correlated standard normal pairs, skipping `None`.
fn mc_mean(
    n: usize,
    seed: u64,
    rho: f64,
    f: impl Fn(f64, f64) -> Option<f64> + Sync,
) -> (Moments, usize) {
    map_shards(n, seed, rho, |draws| {
        let mut m = Moments::default();
        let mut excluded = 0;
        for (x, y) in draws {
            match f(x, y) {
                Some(v) => m.push(v),
                None => excluded += 1,
            }
        }
        (m, excluded)
    })
    .into_iter()
    .fold((Moments::default(), 0), |(m, e), (sm, se)| (m.merge(sm), e + se))
}

fn estimate(m: Moments, excluded: usize, seed: u64, offset: f64, sign: f64) -> McEstimate {
    McEstimate {
        value: offset + sign * m.mean,
        std_error: m.std_error(),
        n_samples: m.n + excluded,
        seed,
        excluded,
        warnings: Vec::new(),
    }
}

/// Ambiguity part of `U_X^pm`: `E[1_C ln(|∂y g| / |∂x g|)]` with
/// `C = {|∂x g| ≤ |∂y g|}`, i.e. the mean positive part of the log ratio.
pub fn mc_upm_minus_x(kernel: &dyn NfbiKernel, rho: f64, n: usize, seed: u64) -> Result<McEstimate, ModelError> {
    check_rho(rho)?;
    check_samples(n, MIN_SAMPLES_PM)?;
    let (m, excluded) = mc_mean(n, seed, rho, |x, y| kernel.log_partial_ratio(x, y).map(|r| r.max(0.0)));
    check_exclusions(excluded, n)?;
    Ok(estimate(m, excluded, seed, 0.0, 1.0))
}

/// Ambiguity part of `U_Y^pm`: the mean positive part of `ln(|∂x g| / |∂y g|)`.
pub fn mc_upm_minus_y(kernel: &dyn NfbiKernel, rho: f64, n: usize, seed: u64) -> Result<McEstimate, ModelError> {
    check_rho(rho)?;
    check_samples(n, MIN_SAMPLES_PM)?;
    let (m, excluded) = mc_mean(n, seed, rho, |x, y| kernel.log_partial_ratio(x, y).map(|r| (-r).max(0.0)));
    check_exclusions(excluded, n)?;
    Ok(estimate(m, excluded, seed, 0.0, 1.0))
}

/// `U_X^pm = (1/π)√(1−ρ²) − E[1_C ln(|∂y g| / |∂x g|)]`.
pub fn mc_upm_x(kernel: &dyn NfbiKernel, rho: f64, n: usize, seed: u64) -> Result<McEstimate, ModelError> {
    let minus = mc_upm_minus_x(kernel, rho, n, seed)?;
    Ok(McEstimate {
        value: specificity_constant(rho) - minus.value,
        ..minus
    })
}

/// `U_Y^pm`, the mirror image of [`mc_upm_x`].
pub fn mc_upm_y(kernel: &dyn NfbiKernel, rho: f64, n: usize, seed: u64) -> Result<McEstimate, ModelError> {
    let minus = mc_upm_minus_y(kernel, rho, n, seed)?;
    Ok(McEstimate {
        value: specificity_constant(rho) - minus.value,
        ..minus
    })
}

#[derive(Clone, Copy)]
enum Side {
    X,
    Y,
}

/// Binned estimate of `E[max(±E[h | T], 0)]` with
/// `h = ln(p_Y(Y) / p_X(X)) − ln(|∂y g| / |∂x g|)`.
fn mc_umin(
    kernel: &dyn NfbiKernel,
    rho: f64,
    n: usize,
    t_bins: usize,
    seed: u64,
    side: Side,
) -> Result<McEstimate, ModelError> {
    check_rho(rho)?;
    check_samples(n, MIN_SAMPLES_MIN)?;
    if t_bins < MIN_T_BINS {
        return Err(ModelError::Parameter(format!("t_bins must be at least {MIN_T_BINS}, got {t_bins}")));
    }
    let shards = map_shards(n, seed, rho, |draws| {
        let mut out = Vec::new();
        let mut excluded = 0usize;
        for (x, y) in draws {
            match kernel.log_partial_ratio(x, y) {
                Some(r) => out.push((kernel.eval(x, y), 0.5 * (x * x - y * y) - r)),
                None => excluded += 1,
            }
        }
        (out, excluded)
    });
    let excluded: usize = shards.iter().map(|s| s.1).sum();
    check_exclusions(excluded, n)?;
    let mut pts: Vec<(f64, f64)> = shards.into_iter().flat_map(|s| s.0).collect();
    // stable sort on a total order: ties keep shard order
    pts.par_sort_by(|p, q| p.0.total_cmp(&q.0));

    let m = pts.len();
    let mut warnings = Vec::new();
    let bins = if t_bins > m {
        warnings.push(format!("t_bins reduced from {t_bins} to {m}: not enough samples to fill every bin"));
        m
    } else {
        t_bins
    };
    let sign = match side {
        Side::X => 1.0,
        Side::Y => -1.0,
    };
    let mut value = 0.0;
    let mut var = 0.0;
    for b in 0..bins {
        let (lo, hi) = (b * m / bins, (b + 1) * m / bins);
        let mut mo = Moments::default();
        for &(_, h) in &pts[lo..hi] {
            mo.push(sign * h);
        }
        let mass = mo.n as f64 / m as f64;
        value += mo.mean.max(0.0) * mass;
        var += mass * mass * mo.variance() / mo.n as f64;
    }
    Ok(McEstimate {
        value,
        std_error: var.sqrt(),
        n_samples: n,
        seed,
        excluded,
        warnings,
    })
}

/// `U_X^min = E[1_A (ln(p_Y(Y)/p_X(X)) − ln(|∂y g| / |∂x g|))]` with
/// `A = {I_X(T) ≥ I_Y(T)}`. The event is estimated per equal-mass quantile bin of `T`
/// by the sign of the bin mean. The reported standard error is that of the unclipped
/// binned sum, which bounds the clipped estimator's spread.
pub fn mc_umin_x(
    kernel: &dyn NfbiKernel,
    rho: f64,
    n: usize,
    t_bins: usize,
    seed: u64,
) -> Result<McEstimate, ModelError> {
    mc_umin(kernel, rho, n, t_bins, seed, Side::X)
}

/// `U_Y^min`, the mirror image of [`mc_umin_x`].
pub fn mc_umin_y(
    kernel: &dyn NfbiKernel,
    rho: f64,
    n: usize,
    t_bins: usize,
    seed: u64,
) -> Result<McEstimate, ModelError> {
    mc_umin(kernel, rho, n, t_bins, seed, Side::Y)
}

/// Sampled `E_T[min(I_X(T), I_Y(T))]` for a linear interaction, using the closed-form
/// specific informations. An oracle for the closed-form `R^min`.
pub fn mc_rmin_linear(li: &LinearInteraction<f64>, n: usize, seed: u64) -> Result<McEstimate, ModelError> {
    check_samples(n, MIN_SAMPLES_PM)?;
    let (a, b) = (li.a(), li.b());
    let (m, excluded) = mc_mean(n, seed, li.rho(), |x, y| {
        let (ix, iy) = linear_specific_info(li, a * x + b * y);
        Some(ix.min(iy))
    });
    Ok(estimate(m, excluded, seed, 0.0, 1.0))
}

/// Sampled `E[min(−ln p(X), −ln p(Y))]` for standard normal predictors: an oracle for
/// the specificity redundancy `R⁺`.
pub fn mc_rplus(rho: f64, n: usize, seed: u64) -> Result<McEstimate, ModelError> {
    check_rho(rho)?;
    check_samples(n, MIN_SAMPLES_PM)?;
    let half_ln_2pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    let (m, excluded) = mc_mean(n, seed, rho, |x, y| Some(half_ln_2pi + 0.5 * (x * x).min(y * y)));
    Ok(estimate(m, excluded, seed, 0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityRatioReport {
    pub n: usize,
    pub max_abs_error: f64,
}

/// Checks `p_{X,T}(x, t) = p_{X,Y}(x, ỹ) / |∂y g|` at sampled points, where `ỹ` solves
/// `g(x, ỹ) = t`, against the bivariate Gaussian law of `(X, T)`. Only the linear
/// kernel has an independent closed form for the left side.
pub fn density_ratio_identity_check(
    kernel: &KernelSpec,
    rho: f64,
    n: usize,
    seed: u64,
) -> Result<DensityRatioReport, ModelError> {
    let KernelSpec::Linear { a, b } = *kernel else {
        return Err(ModelError::Unsupported(
            "density ratio check needs a linear kernel; no closed form otherwise".into(),
        ));
    };
    let li = LinearInteraction::new(a, b, rho)?;
    let xt = li.joint_xt()?;
    let xy = crate::gaussian::GaussianParams::normalized_pair(rho)?;
    let worst = map_shards(n, seed, rho, |draws| {
        let mut worst: f64 = 0.0;
        for (x, y) in draws {
            let t = a * x + b * y;
            let y_tilde = (t - a * x) / b;
            let lhs = xt.density(&[x, t]);
            let rhs = xy.density(&[x, y_tilde]) / b.abs();
            worst = worst.max((lhs - rhs).abs());
        }
        worst
    })
    .into_iter()
    .fold(0.0, f64::max);
    Ok(DensityRatioReport { n, max_abs_error: worst })
}

/// `I(T; X, Y)` of a noise-free interaction: the target is a deterministic function of
/// continuous predictors, so the joint mutual information is infinite.
pub fn infinite_mi_flag(_kernel: &dyn NfbiKernel) -> ExtReal<f64> {
    ExtReal::PosInf
}

/// One-parameter kernel family swept toward a limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum KernelFamily {
    /// `a·x + b·y` indexed by `a`.
    Linear { b: f64 },
    /// `y / (1 + e^{α − x})` indexed by `α`.
    Sigmoidal,
}

impl KernelFamily {
    pub fn at(&self, param: f64) -> KernelSpec {
        match *self {
            KernelFamily::Linear { b } => KernelSpec::Linear { a: param, b },
            KernelFamily::Sigmoidal => KernelSpec::Sigmoidal { alpha: param },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub param: f64,
    pub umin_x: McEstimate,
    pub upm_x: McEstimate,
    pub upm_minus_x: McEstimate,
    /// `(1/π)√(1−ρ²)`, independent of the kernel.
    pub upm_y_constant: f64,
    /// Closed-form `(U_X^min, U_X^pm)` where one exists.
    pub closed_form: Option<(f64, f64)>,
}

/// Both unique-information estimators at every grid point. Every point reuses `seed`,
/// so neighbouring rows share their random draws.
pub fn limit_sweep(
    family: &KernelFamily,
    rho: f64,
    grid: &[f64],
    n: usize,
    seed: u64,
) -> Result<Vec<SweepRow>, ModelError> {
    grid.iter()
        .map(|&param| {
            let spec = family.at(param);
            let kernel = spec.build();
            let umin_x = mc_umin_x(kernel.as_ref(), rho, n, DEFAULT_T_BINS, seed)?;
            let upm_minus_x = mc_upm_minus_x(kernel.as_ref(), rho, n, seed)?;
            let upm_x = McEstimate {
                value: specificity_constant(rho) - upm_minus_x.value,
                ..upm_minus_x.clone()
            };
            let closed_form = match spec {
                KernelSpec::Linear { a, b } => {
                    let li = LinearInteraction::new(a, b, rho)?;
                    let v = |e: ExtReal<f64>| e.to_float();
                    Some((v(linear_imin_pid(&li).u_x), v(linear_ipm_pid(&li).u_x)))
                }
                _ => None,
            };
            Ok(SweepRow {
                param,
                umin_x,
                upm_x,
                upm_minus_x,
                upm_y_constant: specificity_constant(rho),
                closed_form,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{Linear, Sigmoidal, SymmetricSum};
    use std::f64::consts::{LN_2, PI};

    #[test]
    fn moments_merge_matches_single_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 * 0.1).collect();
        let mut whole = Moments::default();
        xs.iter().for_each(|&v| whole.push(v));
        let (mut l, mut r) = (Moments::default(), Moments::default());
        xs[..313].iter().for_each(|&v| l.push(v));
        xs[313..].iter().for_each(|&v| r.push(v));
        let merged = l.merge(r);
        assert_eq!(merged.n, whole.n);
        assert!((merged.mean - whole.mean).abs() < 1e-12);
        assert!((merged.m2 - whole.m2).abs() < 1e-8);
    }

    #[test]
    fn linear_upm_is_exact() {
        let est = mc_upm_x(&Linear { a: 1.0, b: 2.0 }, 0.0, 10_000, 3).unwrap();
        assert!((est.value - (1.0 / PI - LN_2)).abs() < 1e-12);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn rejects_small_samples_and_bad_rho() {
        let k = Linear { a: 1.0, b: 2.0 };
        assert!(matches!(mc_upm_x(&k, 0.0, 10, 1), Err(ModelError::TooFewSamples { .. })));
        assert!(matches!(mc_umin_x(&k, 0.0, 5_000, 50, 1), Err(ModelError::TooFewSamples { .. })));
        assert!(matches!(mc_umin_x(&k, 0.0, 20_000, 5, 1), Err(ModelError::Parameter(_))));
        assert!(matches!(mc_upm_x(&k, 1.0, 10_000, 1), Err(ModelError::Correlation(_))));
    }

    #[test]
    fn deterministic_in_seed() {
        let k = Sigmoidal { alpha: 0.0 };
        let a = mc_umin_x(&k, 0.2, 150_000, 50, 9).unwrap();
        let b = mc_umin_x(&k, 0.2, 150_000, 50, 9).unwrap();
        assert_eq!(a, b);
        let c = mc_umin_x(&k, 0.2, 150_000, 50, 10).unwrap();
        assert_ne!(a.std_error, c.std_error);
    }

    #[test]
    fn independent_of_thread_count() {
        let k = Sigmoidal { alpha: -1.0 };
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| mc_upm_x(&k, 0.1, 200_000, 4).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn symmetric_kernel_is_exchangeable() {
        let ux = mc_umin_x(&SymmetricSum, 0.3, 200_000, 50, 5).unwrap();
        let uy = mc_umin_y(&SymmetricSum, 0.3, 200_000, 50, 5).unwrap();
        assert!((ux.value - uy.value).abs() <= 3.0 * ux.std_error.hypot(uy.std_error));
        let px = mc_upm_x(&SymmetricSum, 0.3, 10_000, 5).unwrap();
        let py = mc_upm_y(&SymmetricSum, 0.3, 10_000, 5).unwrap();
        assert_eq!(px.value, py.value);
    }

    #[test]
    fn density_ratio_identity() {
        for &(a, b, rho) in &[(1.0, 2.0, 0.0), (0.3, 1.0, 0.5)] {
            let r = density_ratio_identity_check(&KernelSpec::Linear { a, b }, rho, 10_000, 1).unwrap();
            assert!(r.max_abs_error < 1e-10, "{r:?}");
        }
        assert!(density_ratio_identity_check(&KernelSpec::Linear { a: 1.0, b: 1.0 }, 0.0, 1000, 1).is_err());
        assert!(matches!(
            density_ratio_identity_check(&KernelSpec::Sigmoidal { alpha: 0.0 }, 0.0, 1000, 1),
            Err(ModelError::Unsupported(_))
        ));
    }

    #[test]
    fn infinite_joint_information() {
        assert_eq!(infinite_mi_flag(&Linear { a: 1.0, b: 2.0 }), ExtReal::PosInf);
        assert_eq!(infinite_mi_flag(&Sigmoidal { alpha: 0.0 }), ExtReal::PosInf);
    }
}

//! Closed-form decompositions for the noise-free linear Gaussian interaction
//! `T = aX + bY`, with `(X, Y)` standard normal with correlation `rho`, and the
//! Gaussian calculus behind them.

use crate::error::ModelError;
use crate::ext_real::ExtReal;
use crate::pid::{BivariatePid, PidKind, PmSublattices, SublatticeInputs};
use crate::quadrature::adaptive_simpson;
use crate::scalar::Real;

/// Dense square matrix of small dimension, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SmallMatrix<F> {
    n: usize,
    data: Vec<F>,
}

impl<F: Real> SmallMatrix<F> {
    pub fn from_rows(rows: &[&[F]]) -> Result<Self, ModelError> {
        let n = rows.len();
        if n == 0 || n > 3 || rows.iter().any(|r| r.len() != n) {
            return Err(ModelError::Dimension(format!(
                "expected a square matrix of dimension 1..=3, got {} rows",
                n
            )));
        }
        Ok(SmallMatrix {
            n,
            data: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![F::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = F::one();
        }
        SmallMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.data[i * self.n + j]
    }

    pub fn scaled(&self, k: F) -> Self {
        SmallMatrix {
            n: self.n,
            data: self.data.iter().map(|&v| v * k).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = vec![F::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.get(i, j);
            }
        }
        SmallMatrix { n, data }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut data = vec![F::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum();
            }
        }
        SmallMatrix { n, data }
    }

    pub fn matvec(&self, v: &[F]) -> Vec<F> {
        (0..self.n)
            .map(|i| (0..self.n).map(|k| self.get(i, k) * v[k]).sum())
            .collect()
    }

    pub fn det(&self) -> F {
        let m = |i, j| self.get(i, j);
        match self.n {
            1 => m(0, 0),
            2 => m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0),
            _ => {
                m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                    - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                    + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
            }
        }
    }

    /// Determinant of the principal submatrix on `idx`.
    fn principal_minor(&self, idx: &[usize]) -> F {
        let rows: Vec<Vec<F>> = idx.iter().map(|&i| idx.iter().map(|&j| self.get(i, j)).collect()).collect();
        let refs: Vec<&[F]> = rows.iter().map(|r| r.as_slice()).collect();
        SmallMatrix::from_rows(&refs).expect("minor of a valid matrix").det()
    }
}

/// Mean vector and covariance matrix of a Gaussian of dimension at most 3.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianParams<F> {
    pub mean: Vec<F>,
    pub cov: SmallMatrix<F>,
}

impl<F: Real> GaussianParams<F> {
    /// Validates symmetry and positive semidefiniteness (all principal minors
    /// `>= -1e-10`).
    pub fn new(mean: Vec<F>, cov: SmallMatrix<F>) -> Result<Self, ModelError> {
        let n = cov.dim();
        if mean.len() != n {
            return Err(ModelError::Dimension(format!("mean has {} entries, covariance is {n}x{n}", mean.len())));
        }
        let tol = F::lit(1e-10);
        for i in 0..n {
            for j in 0..i {
                if (cov.get(i, j) - cov.get(j, i)).abs() > tol {
                    return Err(ModelError::NotPositiveDefinite(format!("covariance not symmetric at ({i},{j})")));
                }
            }
        }
        // every nonempty subset of indices
        for mask in 1u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let minor = cov.principal_minor(&idx);
            if minor < -tol {
                return Err(ModelError::NotPositiveDefinite(format!(
                    "principal minor {idx:?} = {minor}"
                )));
            }
        }
        Ok(GaussianParams { mean, cov })
    }

    /// Standard bivariate normal with correlation `rho`.
    pub fn normalized_pair(rho: F) -> Result<Self, ModelError> {
        let cov = SmallMatrix::from_rows(&[&[F::one(), rho], &[rho, F::one()]])?;
        Self::new(vec![F::zero(), F::zero()], cov)
    }

    /// Density at `x`, for nonsingular covariance of dimension 1 or 2.
    pub fn density(&self, x: &[F]) -> F {
        let two_pi = F::lit(2.0) * F::PI();
        match self.cov.dim() {
            1 => {
                let v = self.cov.get(0, 0);
                let d = x[0] - self.mean[0];
                (-d * d / (F::lit(2.0) * v)).exp() / (two_pi * v).sqrt()
            }
            2 => {
                let det = self.cov.det();
                let (d0, d1) = (x[0] - self.mean[0], x[1] - self.mean[1]);
                // inverse of [[a, b], [b, c]] is [[c, -b], [-b, a]] / det
                let q = (self.cov.get(1, 1) * d0 * d0 - F::lit(2.0) * self.cov.get(0, 1) * d0 * d1
                    + self.cov.get(0, 0) * d1 * d1)
                    / det;
                (-q / F::lit(2.0)).exp() / (two_pi * det.sqrt())
            }
            n => panic!("density implemented for dimension 1 and 2, not {n}"),
        }
    }
}

/// Image of a Gaussian under a nonsingular linear map: `mean' = A mean`,
/// `cov' = A cov Aᵀ`.
pub fn gauss_linear_transform<F: Real>(
    params: &GaussianParams<F>,
    a: &SmallMatrix<F>,
) -> Result<GaussianParams<F>, ModelError> {
    if a.dim() != params.cov.dim() {
        return Err(ModelError::Dimension(format!(
            "transform is {}x{}, Gaussian has dimension {}",
            a.dim(),
            a.dim(),
            params.cov.dim()
        )));
    }
    let det = a.det();
    if det.abs() <= F::lit(1e-12) {
        return Err(ModelError::Singular(det.abs().to_f64().unwrap_or(0.0)));
    }
    Ok(GaussianParams {
        mean: a.matvec(&params.mean),
        cov: a.matmul(&params.cov).matmul(&a.transpose()),
    })
}

/// Law of `X₁ | X₂ = observed` for a bivariate Gaussian: returns `(mean, variance)`.
pub fn conditional_gaussian<F: Real>(
    mu1: F,
    mu2: F,
    s1: F,
    s2: F,
    rho: F,
    observed: F,
) -> Result<(F, F), ModelError> {
    if !(s1 > F::zero() && s2 > F::zero()) {
        return Err(ModelError::Parameter("standard deviations must be positive".into()));
    }
    if rho.abs() > F::one() {
        return Err(ModelError::Correlation(rho.to_f64().unwrap_or(f64::NAN)));
    }
    let mean = mu1 + rho * (s1 / s2) * (observed - mu2);
    let var = s1 * s1 * (F::one() - rho * rho);
    Ok((mean, var.max(F::zero())))
}

/// `D(N(mu1, s1²) ‖ N(mu2, s2²))` in nats.
pub fn kl_gaussians<F: Real>(mu1: F, s1: F, mu2: F, s2: F) -> F {
    let half = F::lit(0.5);
    let dm = mu1 - mu2;
    (s2 / s1).ln() + (s1 * s1 + dm * dm) / (F::lit(2.0) * s2 * s2) - half
}

/// `T = aX + bY` with `0 < a < b` and standard normal predictors of correlation `rho`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearInteraction<F> {
    a: F,
    b: F,
    rho: F,
}

impl<F: Real> LinearInteraction<F> {
    pub fn new(a: F, b: F, rho: F) -> Result<Self, ModelError> {
        let f = |v: F| v.to_f64().unwrap_or(f64::NAN);
        if !(a > F::zero() && a < b && b.is_finite()) {
            return Err(ModelError::NotOrdered { a: f(a), b: f(b) });
        }
        if !(rho.abs() < F::one()) {
            return Err(ModelError::Correlation(f(rho)));
        }
        Ok(LinearInteraction { a, b, rho })
    }

    pub fn a(&self) -> F {
        self.a
    }

    pub fn b(&self) -> F {
        self.b
    }

    pub fn rho(&self) -> F {
        self.rho
    }

    pub fn sigma_t(&self) -> F {
        let (a, b, r) = (self.a, self.b, self.rho);
        (a * a + b * b + F::lit(2.0) * r * a * b).sqrt()
    }

    /// Correlation between `X` and `T`.
    pub fn rho_xt(&self) -> F {
        (self.a + self.rho * self.b) / self.sigma_t()
    }

    /// Correlation between `Y` and `T`.
    pub fn rho_yt(&self) -> F {
        (self.b + self.rho * self.a) / self.sigma_t()
    }

    /// Gaussian law of `(X, T)`.
    pub fn joint_xt(&self) -> Result<GaussianParams<F>, ModelError> {
        let transform = SmallMatrix::from_rows(&[&[F::one(), F::zero()], &[self.a, self.b]])?;
        gauss_linear_transform(&GaussianParams::normalized_pair(self.rho)?, &transform)
    }
}

/// Pairwise mutual informations of a linear interaction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearMi<F> {
    pub ixy: F,
    pub itx: F,
    pub ity: F,
}

pub fn linear_mi<F: Real>(li: &LinearInteraction<F>) -> LinearMi<F> {
    let ixy = (F::one() / (F::one() - li.rho * li.rho).sqrt()).ln();
    let ln_st = li.sigma_t().ln();
    LinearMi {
        ixy,
        itx: -li.b.ln() + ln_st + ixy,
        ity: -li.a.ln() + ln_st + ixy,
    }
}

/// Specific informations `(I_X(t), I_Y(t))`.
pub fn linear_specific_info<F: Real>(li: &LinearInteraction<F>, t: F) -> (F, F) {
    let (a, b, r) = (li.a, li.b, li.rho);
    let s2 = li.sigma_t() * li.sigma_t();
    let one_r2 = F::one() - r * r;
    let c = li.sigma_t().ln() - one_r2.sqrt().ln() - F::lit(0.5);
    let denom = F::lit(2.0) * s2 * s2;
    let ix = -b.ln() + (b * b * one_r2 * s2 + (a + r * b).powi(2) * t * t) / denom + c;
    let iy = -a.ln() + (a * a * one_r2 * s2 + (b + r * a).powi(2) * t * t) / denom + c;
    (ix, iy)
}

/// `I_Y(t) − I_X(t)` in its factored form.
pub fn specific_info_gap<F: Real>(li: &LinearInteraction<F>, t: F) -> F {
    let (a, b, r) = (li.a, li.b, li.rho);
    let s2 = li.sigma_t() * li.sigma_t();
    (b / a).ln() + (F::one() - r * r) * (b * b - a * a) * (t * t - s2) / (F::lit(2.0) * s2 * s2)
}

/// `(E_T[I_X(T)], E_T[I_Y(T)])` by adaptive quadrature over `t ∈ [−8σ_T, 8σ_T]`. The
/// neglected Gaussian tail carries mass below 1.3e-15.
pub fn expected_specific_info_quadrature<F: Real>(li: &LinearInteraction<F>) -> (F, F) {
    let st = li.sigma_t();
    let norm = F::one() / (st * (F::lit(2.0) * F::PI()).sqrt());
    let pdf = move |t: F| norm * (-(t * t) / (F::lit(2.0) * st * st)).exp();
    let lim = F::lit(8.0) * st;
    let tol = F::lit(1e-12);
    let ex = adaptive_simpson(|t| pdf(t) * linear_specific_info(li, t).0, -lim, lim, tol, 40);
    let ey = adaptive_simpson(|t| pdf(t) * linear_specific_info(li, t).1, -lim, lim, tol, 40);
    (ex, ey)
}

/// Closed-form `I_min` decomposition: `R = I(T;X)`, `U_X = 0`, `U_Y = ln(b/a)`, `S = ∞`.
pub fn linear_imin_pid<F: Real>(li: &LinearInteraction<F>) -> BivariatePid<F> {
    let mi = linear_mi(li);
    let mut d = BivariatePid::from_redundancy(
        PidKind::Imin,
        mi.itx.into(),
        mi.itx.into(),
        mi.ity.into(),
        ExtReal::PosInf,
    );
    // U_X vanishes identically; avoid a rounding residue from itx - itx.
    d.u_x = ExtReal::zero();
    d.u_y = (li.b / li.a).ln().into();
    d
}

/// `(1/π)·√(1 − ρ²)`: the unique specificity of either standard normal predictor.
pub fn specificity_constant<F: Real>(rho: F) -> F {
    (F::one() - rho * rho).sqrt() / F::PI()
}

/// Differential entropy of a standard normal, `ln √(2πe)`.
fn std_normal_entropy<F: Real>() -> F {
    (F::lit(2.0) * F::PI() * F::E()).sqrt().ln()
}

/// Specificity sublattice inputs for standard normal predictors of correlation `rho`.
/// Depends only on the predictors, not on the interaction.
pub fn gaussian_specificity<F: Real>(rho: F) -> SublatticeInputs<F> {
    let h1 = std_normal_entropy::<F>();
    let ln_sqrt_det = (F::one() - rho * rho).sqrt().ln();
    SublatticeInputs {
        redundancy: (h1 - specificity_constant(rho)).into(),
        h_x: h1.into(),
        h_y: h1.into(),
        h_xy: (h1 + h1 + ln_sqrt_det).into(),
    }
}

/// Closed-form `I_PM` decomposition with both sublattices.
pub fn linear_ipm_pid<F: Real>(li: &LinearInteraction<F>) -> BivariatePid<F> {
    let h1 = std_normal_entropy::<F>();
    let h_xy = h1 + h1 + (F::one() - li.rho * li.rho).sqrt().ln();
    let h_t = h1 + li.sigma_t().ln();
    // -ln p(x|t) = ln b + [-ln p(x,y)] - [-ln p(t)] under the change of variables
    let h_x_given_t = li.b.ln() + h_xy - h_t;
    let h_y_given_t = li.a.ln() + h_xy - h_t;
    let plus = gaussian_specificity(li.rho);
    let minus = SublatticeInputs {
        // a < b, so the Y-conditional surprisal is the smaller one pointwise
        redundancy: h_y_given_t.into(),
        h_x: h_x_given_t.into(),
        h_y: h_y_given_t.into(),
        h_xy: ExtReal::NegInf,
    };
    let lattices = PmSublattices::from_components(plus, minus);
    let [r, u_x, u_y, s] = lattices.atoms();
    let mi = linear_mi(li);
    BivariatePid {
        kind: PidKind::Ipm,
        r,
        u_x,
        u_y,
        s,
        mi_x: mi.itx.into(),
        mi_y: mi.ity.into(),
        mi_xy: ExtReal::PosInf,
        sublattices: Some(lattices),
    }
}

/// One row of the `a → 0⁺` limit table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitRow<F> {
    pub a: F,
    pub imin: BivariatePid<F>,
    pub ipm: BivariatePid<F>,
    pub mi: LinearMi<F>,
    /// `U_Y^min / I(T;Y)`, limit 1.
    pub uy_min_ratio: F,
    /// `R^min / I(T;Y)`, limit 0.
    pub r_min_ratio: F,
    /// `U_X^pm / I(T;Y)`, limit −1.
    pub ux_pm_ratio: F,
    /// `R^pm / I(T;Y)`, limit 1.
    pub r_pm_ratio: F,
    /// `U_X^pm / U_Y^min`, limit −1.
    pub ux_pm_over_uy_min: F,
}

impl<F: Real> LimitRow<F> {
    pub const LIMITS: [f64; 5] = [1.0, 0.0, -1.0, 1.0, -1.0];

    pub fn ratios(&self) -> [F; 5] {
        [
            self.uy_min_ratio,
            self.r_min_ratio,
            self.ux_pm_ratio,
            self.r_pm_ratio,
            self.ux_pm_over_uy_min,
        ]
    }
}

/// Both closed-form PIDs and their normalized ratios along a decreasing sequence of `a`.
pub fn linear_limits<F: Real>(b: F, rho: F, a_sequence: &[F]) -> Result<Vec<LimitRow<F>>, ModelError> {
    if a_sequence.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(ModelError::Parameter("a_sequence must be strictly decreasing".into()));
    }
    a_sequence
        .iter()
        .map(|&a| {
            let li = LinearInteraction::new(a, b, rho)?;
            let imin = linear_imin_pid(&li);
            let ipm = linear_ipm_pid(&li);
            let mi = linear_mi(&li);
            let v = |e: ExtReal<F>| e.value().expect("finite atom");
            Ok(LimitRow {
                a,
                uy_min_ratio: v(imin.u_y) / mi.ity,
                r_min_ratio: v(imin.r) / mi.ity,
                ux_pm_ratio: v(ipm.u_x) / mi.ity,
                r_pm_ratio: v(ipm.r) / mi.ity,
                ux_pm_over_uy_min: v(ipm.u_x) / v(imin.u_y),
                imin,
                ipm,
                mi,
            })
        })
        .collect()
}

/// `f(γ) = ln γ − (1 − ρ²)(γ² − 1) / (2(γ² + 2ργ + 1))`: the specific-information gap at
/// `t = 0` with `b = γa`.
pub fn f_gamma<F: Real>(gamma: F, rho: F) -> F {
    let g2 = gamma * gamma;
    gamma.ln() - (F::one() - rho * rho) * (g2 - F::one()) / (F::lit(2.0) * (g2 + F::lit(2.0) * rho * gamma + F::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    fn li(a: f64, b: f64, rho: f64) -> LinearInteraction<f64> {
        LinearInteraction::new(a, b, rho).unwrap()
    }

    #[test]
    fn linear_transform_examples() {
        let g = GaussianParams::new(vec![1.0, -2.0], SmallMatrix::identity(2)).unwrap();
        assert_eq!(gauss_linear_transform(&g, &SmallMatrix::identity(2)).unwrap(), g);
        let out = gauss_linear_transform(&g, &SmallMatrix::identity(2).scaled(2.0)).unwrap();
        assert_eq!(out.cov, SmallMatrix::identity(2).scaled(4.0));
        assert_eq!(out.mean, vec![2.0, -4.0]);

        let l = li(0.7, 1.3, 0.4);
        let xt = l.joint_xt().unwrap();
        let st2 = l.sigma_t().powi(2);
        assert!((xt.cov.get(0, 0) - 1.0).abs() < 1e-15);
        assert!((xt.cov.get(0, 1) - (0.7 + 0.4 * 1.3)).abs() < 1e-15);
        assert!((xt.cov.get(1, 1) - st2).abs() < 1e-14);

        let singular = SmallMatrix::from_rows(&[&[1.0, 2.0], &[2.0, 4.0]]).unwrap();
        assert!(matches!(gauss_linear_transform(&g, &singular), Err(ModelError::Singular(_))));
    }

    #[test]
    fn rejects_indefinite_covariance() {
        let bad = SmallMatrix::from_rows(&[&[1.0, 2.0], &[2.0, 1.0]]).unwrap();
        assert!(GaussianParams::new(vec![0.0, 0.0], bad).is_err());
        let asym = SmallMatrix::from_rows(&[&[1.0, 0.2], &[0.1, 1.0]]).unwrap();
        assert!(GaussianParams::new(vec![0.0, 0.0], asym).is_err());
    }

    #[test]
    fn conditional_gaussian_examples() {
        assert_eq!(conditional_gaussian(0.3, 5.0, 2.0, 1.0, 0.0, 9.0).unwrap(), (0.3, 4.0));
        assert_eq!(conditional_gaussian(0.0, 0.0, 1.0, 1.0, 1.0, 0.7).unwrap(), (0.7, 0.0));
        let l = li(1.0, 2.0, 0.3);
        let st = l.sigma_t();
        let (m, v) = conditional_gaussian(0.0, 0.0, 1.0, st, l.rho_xt(), 1.7).unwrap();
        assert!((m - (1.0 + 0.3 * 2.0) * 1.7 / (st * st)).abs() < 1e-14);
        assert!((v - 4.0 * (1.0 - 0.09) / (st * st)).abs() < 1e-14);
        assert!(conditional_gaussian(0.0, 0.0, 0.0, 1.0, 0.1, 0.0).is_err());
    }

    #[test]
    fn kl_gaussian_examples() {
        assert_eq!(kl_gaussians(0.4f64, 1.3, 0.4, 1.3), 0.0);
        assert!((kl_gaussians(1.0f64, 1.0, 0.0, 1.0) - 0.5).abs() < 1e-15);
        assert!((kl_gaussians(0.0f64, 2.0, 0.0, 1.0) - (1.5 - LN_2)).abs() < 1e-15);
    }

    #[test]
    fn rejects_invalid_interactions() {
        assert!(matches!(LinearInteraction::new(2.0, 1.0, 0.0), Err(ModelError::NotOrdered { .. })));
        assert!(matches!(LinearInteraction::new(1.0, 1.0, 0.0), Err(ModelError::NotOrdered { .. })));
        assert!(matches!(LinearInteraction::new(1.0, 2.0, 1.5), Err(ModelError::Correlation(_))));
    }

    #[test]
    fn linear_mi_examples() {
        let m = linear_mi(&li(1.0, 2.0, 0.0));
        assert!(m.ixy.abs() < 1e-16);
        assert!((m.itx - 0.111_571_775_657_104_9).abs() < 1e-14);
        assert!((m.ity - 0.804_718_956_217_050_2).abs() < 1e-14);
        // two-Gaussian MI formula from the X-T correlation
        for &(a, b, r) in &[(1.0, 2.0, 0.0), (0.3, 1.0, 0.5), (2.0, 9.0, -0.8)] {
            let l = li(a, b, r);
            let m = linear_mi(&l);
            assert!((m.itx + 0.5 * (1.0 - l.rho_xt().powi(2)).ln()).abs() < 1e-12);
            assert!((m.ity + 0.5 * (1.0 - l.rho_yt().powi(2)).ln()).abs() < 1e-12);
        }
        let near = linear_mi(&li(1.0 - 1e-9, 1.0, 0.0));
        assert!((near.itx - near.ity).abs() < 1e-8);
    }

    #[test]
    fn specific_info_gap_examples() {
        let l = li(0.6, 1.7, 0.25);
        let st = l.sigma_t();
        let (ix, iy) = linear_specific_info(&l, st);
        assert!((iy - ix - (1.7f64 / 0.6).ln()).abs() < 1e-13);
        let (ix, iy) = linear_specific_info(&l, 0.0);
        let expected = (1.7f64 / 0.6).ln() - (1.0 - 0.0625) * (1.7f64.powi(2) - 0.36) / (2.0 * st * st);
        assert!((iy - ix - expected).abs() < 1e-13);
        let (ix, iy) = linear_specific_info(&li(1.0, 2.0, 0.0), 0.0);
        assert!((iy - ix - (LN_2 - 0.3)).abs() < 1e-14);
        assert!((specific_info_gap(&l, 0.37) - (linear_specific_info(&l, 0.37).1 - linear_specific_info(&l, 0.37).0)).abs() < 1e-13);
    }

    #[test]
    fn imin_closed_form_example() {
        let d = linear_imin_pid(&li(1.0, 2.0, 0.0));
        assert!((d.r.value().unwrap() - (5f64.sqrt() / 2.0).ln()).abs() < 1e-14);
        assert_eq!(d.u_x, ExtReal::Finite(0.0));
        assert!((d.u_y.value().unwrap() - LN_2).abs() < 1e-15);
        assert_eq!(d.s, ExtReal::PosInf);
        let near = linear_imin_pid(&li(1.0 - 1e-10, 1.0, 0.2));
        assert!(near.u_y.value().unwrap() < 1e-9);
    }

    #[test]
    fn ipm_closed_form_example() {
        let d = linear_ipm_pid(&li(1.0, 2.0, 0.0));
        assert!((d.r.value().unwrap() - (5f64.sqrt().ln() - 1.0 / PI)).abs() < 1e-14);
        assert!((d.r.value().unwrap() - 0.486_409).abs() < 1e-6);
        assert!((d.u_x.value().unwrap() - (1.0 / PI - LN_2)).abs() < 1e-14);
        assert!((d.u_y.value().unwrap() - 1.0 / PI).abs() < 1e-14);
        assert_eq!(d.s, ExtReal::PosInf);
        let l = d.sublattices.unwrap();
        let h1 = (2.0 * PI * std::f64::consts::E).sqrt().ln();
        assert!((l.r_plus.value().unwrap() - (h1 - 1.0 / PI)).abs() < 1e-14);
        assert!((l.u_x_plus.value().unwrap() - 1.0 / PI).abs() < 1e-14);
        assert!((l.u_y_plus.value().unwrap() - 1.0 / PI).abs() < 1e-14);
        assert!((l.u_x_minus.value().unwrap() - LN_2).abs() < 1e-14);
        assert!(l.u_y_minus.value().unwrap().abs() < 1e-14);
        assert_eq!(l.s_minus, ExtReal::NegInf);
    }

    #[test]
    fn ambiguity_redundancy_matches_lemma() {
        let l = li(0.4, 1.1, 0.6);
        let lat = linear_ipm_pid(&l).sublattices.unwrap();
        let h1 = (2.0 * PI * std::f64::consts::E).sqrt().ln();
        let want = h1 + (1.0f64 - 0.36).sqrt().ln() + (0.4 / l.sigma_t()).ln();
        assert!((lat.r_minus.value().unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn limits_table() {
        let rows = linear_limits(1.0, 0.5, &[0.5, 1e-2, 1e-6, 1e-12]).unwrap();
        let ixy = -(0.75f64).sqrt().ln();
        assert!((rows[2].imin.r.value().unwrap() - ixy).abs() < 0.01);
        for w in rows.windows(2) {
            for (k, lim) in LimitRow::<f64>::LIMITS.iter().enumerate() {
                let (d0, d1) = ((w[0].ratios()[k] - lim).abs(), (w[1].ratios()[k] - lim).abs());
                assert!(d1 < d0, "ratio {k} not approaching {lim}: {d0} -> {d1}");
            }
        }
        // convergence is logarithmic in a: at a = 1e-6 the U_Y^min ratio is still ~1%
        // short of its limit
        assert!((rows[2].uy_min_ratio - 0.989_695).abs() < 1e-5);
        let far = linear_limits(1.0, 0.5, &[1e-30]).unwrap()[0].ratios();
        for (k, lim) in LimitRow::<f64>::LIMITS.iter().enumerate() {
            assert!((far[k] - lim).abs() < 0.01, "ratio {k} at a = 1e-30: {}", far[k]);
        }
        assert!(linear_limits(1.0, 0.5, &[1e-3, 1e-2]).is_err());
        assert!(linear_limits(1.0, 0.5, &[2.0]).is_err());
    }

    #[test]
    fn f_gamma_examples() {
        assert_eq!(f_gamma(1.0, 0.3), 0.0);
        assert!((f_gamma(2.0, 0.0) - (LN_2 - 0.3)).abs() < 1e-15);
    }

    #[test]
    fn quadrature_recovers_mutual_information() {
        for &(a, b, r) in &[(1.0, 2.0, 0.0), (0.2, 3.0, 0.7), (1.5, 1.6, -0.9)] {
            let l = li(a, b, r);
            let (ex, ey) = expected_specific_info_quadrature(&l);
            let m = linear_mi(&l);
            assert!((ex - m.itx).abs() < 1e-8);
            assert!((ey - m.ity).abs() < 1e-8);
        }
    }
}

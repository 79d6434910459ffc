//! Entropies, mutual informations, KL divergence and specific information, in nats.

use crate::dist::{col_sums, row_sums, Axis, DiscreteDist, DiscreteJoint2, DiscreteJoint3};
use crate::error::InfoError;
use crate::ext_real::ExtReal;
use crate::scalar::{neg_plogp, xlogy_ratio, Real};

pub(crate) fn entropy_of<F: Real>(probs: &[F]) -> F {
    probs.iter().map(|&p| neg_plogp(p)).sum()
}

/// Shannon entropy `-Σ p ln p`.
pub fn entropy<F: Real>(dist: &DiscreteDist<F>) -> F {
    entropy_of(dist.probs())
}

/// `H(X | Y)` for a joint over `(X, Y)`.
pub fn conditional_entropy<F: Real>(joint: &DiscreteJoint2<F>) -> F {
    cond_entropy_table(joint.table(), joint.nx(), joint.ny())
}

pub(crate) fn cond_entropy_table<F: Real>(table: &[F], nx: usize, ny: usize) -> F {
    let py = col_sums(table, nx, ny);
    let mut h = F::zero();
    for x in 0..nx {
        for (y, &q) in py.iter().enumerate() {
            let p = table[x * ny + y];
            if p > F::zero() {
                h = h + p * (q / p).ln();
            }
        }
    }
    h.max(F::zero())
}

/// `I(X; Y)` for a joint over `(X, Y)`. Clamped at zero against rounding.
pub fn mutual_information<F: Real>(joint: &DiscreteJoint2<F>) -> F {
    mi_table(joint.table(), joint.nx(), joint.ny())
}

pub(crate) fn mi_table<F: Real>(table: &[F], nx: usize, ny: usize) -> F {
    let px = row_sums(table, nx, ny);
    let py = col_sums(table, nx, ny);
    let mut mi = F::zero();
    for (x, &a) in px.iter().enumerate() {
        for (y, &b) in py.iter().enumerate() {
            mi = mi + xlogy_ratio(table[x * ny + y], a * b);
        }
    }
    mi.max(F::zero())
}

/// `I(T; X | Y)` for a joint over `(X, Y, T)`.
pub fn conditional_mi<F: Real>(joint: &DiscreteJoint3<F>) -> F {
    let (nx, ny, nt) = joint.shape();
    let pxy = joint.pair(Axis::X, Axis::Y);
    let pyt = joint.pair(Axis::Y, Axis::T);
    let py = joint.marginal(Axis::Y);
    let mut cmi = F::zero();
    for x in 0..nx {
        for y in 0..ny {
            for t in 0..nt {
                let p = joint.p(x, y, t);
                if p > F::zero() {
                    cmi = cmi + p * ((p * py.probs()[y]) / (pxy.p(x, y) * pyt.p(y, t))).ln();
                }
            }
        }
    }
    cmi.max(F::zero())
}

/// `D(p ‖ q)`; `+∞` when `p` has mass outside the support of `q`.
pub fn kl_divergence<F: Real>(p: &DiscreteDist<F>, q: &DiscreteDist<F>) -> Result<ExtReal<F>, InfoError> {
    if p.support() != q.support() {
        return Err(InfoError::AlphabetMismatch(format!(
            "{:?} vs {:?}",
            p.support().symbols(),
            q.support().symbols()
        )));
    }
    let mut d = F::zero();
    for (&a, &b) in p.probs().iter().zip(q.probs()) {
        if a > F::zero() {
            if b == F::zero() {
                return Ok(ExtReal::PosInf);
            }
            d = d + a * (a / b).ln();
        }
    }
    Ok(ExtReal::Finite(d.max(F::zero())))
}

/// Specific information `I_X(y) = D(p(X | y) ‖ p(X))` of the first variable about the
/// outcome `y` of the second. Zero when `p(y) = 0`.
pub fn specific_information<F: Real>(joint: &DiscreteJoint2<F>, y: &str) -> Result<F, InfoError> {
    let iy = joint
        .alphabet_y()
        .index_of(y)
        .ok_or_else(|| InfoError::UnknownSymbol(y.to_string()))?;
    Ok(specific_info_table(joint.table(), joint.nx(), joint.ny(), iy))
}

/// All specific informations `I_X(y)` indexed by `y`.
pub fn specific_information_profile<F: Real>(joint: &DiscreteJoint2<F>) -> Vec<F> {
    let (nx, ny) = (joint.nx(), joint.ny());
    (0..ny).map(|y| specific_info_table(joint.table(), nx, ny, y)).collect()
}

pub(crate) fn specific_info_table<F: Real>(table: &[F], nx: usize, ny: usize, iy: usize) -> F {
    let px = row_sums(table, nx, ny);
    let py: F = (0..nx).map(|x| table[x * ny + iy]).sum();
    if py <= F::zero() {
        return F::zero();
    }
    let mut d = F::zero();
    for (x, &a) in px.iter().enumerate() {
        let post = table[x * ny + iy] / py;
        d = d + xlogy_ratio(post, a);
    }
    d.max(F::zero())
}

/// Interaction information `I(T; X | Y) − I(T; X)`. Positive for synergy-dominated
/// systems, negative for redundancy-dominated ones.
pub fn interaction_information<F: Real>(joint: &DiscreteJoint3<F>) -> F {
    conditional_mi(joint) - mutual_information(&joint.pair(Axis::X, Axis::T))
}

//! Bivariate partial information decompositions of discrete trivariate distributions.
//!
//! Two redundancy functions are provided. `I_min` takes the expected minimum of the
//! specific informations `I_X(t)`, `I_Y(t)` and yields a nonnegative decomposition.
//! `I_PM` takes the difference of a specificity term (expected minimum marginal
//! surprisal) and an ambiguity term (expected minimum conditional surprisal given the
//! target); its atoms are differences of two nonnegative sublattices and may be
//! negative.
//!
//! Given a redundancy `R` the remaining atoms follow from
//!
//! ```text
//! I(T;X)   = R + U_X
//! I(T;Y)   = R + U_Y
//! I(T;X,Y) = R + U_X + U_Y + S
//! ```

use crate::dist::{Axis, DiscreteJoint2, DiscreteJoint3};
use crate::error::InfoError;
use crate::ext_real::ExtReal;
use crate::measures::{conditional_mi, entropy_of, mi_table, mutual_information, specific_information_profile};
use crate::scalar::{Real, Units};

/// Which redundancy function produced a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum PidKind {
    #[serde(rename = "imin")]
    Imin,
    #[serde(rename = "ipm")]
    Ipm,
}

impl PidKind {
    pub const ALL: [PidKind; 2] = [PidKind::Imin, PidKind::Ipm];

    pub fn label(self) -> &'static str {
        match self {
            PidKind::Imin => "imin",
            PidKind::Ipm => "ipm",
        }
    }
}

impl std::str::FromStr for PidKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "imin" | "min" => Ok(PidKind::Imin),
            "ipm" | "pm" => Ok(PidKind::Ipm),
            other => Err(format!("unknown PID kind {other:?} (expected imin or ipm)")),
        }
    }
}

impl std::fmt::Display for PidKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Specificity (`plus`) and ambiguity (`minus`) sublattices of an `I_PM` decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PmSublattices<F> {
    pub r_plus: ExtReal<F>,
    pub u_x_plus: ExtReal<F>,
    pub u_y_plus: ExtReal<F>,
    pub s_plus: ExtReal<F>,
    pub r_minus: ExtReal<F>,
    pub u_x_minus: ExtReal<F>,
    pub u_y_minus: ExtReal<F>,
    pub s_minus: ExtReal<F>,
}

impl<F: Real> PmSublattices<F> {
    /// Builds both sublattices from the redundant terms and the entropic components
    /// `H±(X)`, `H±(Y)`, `H±(X,Y)`.
    pub fn from_components(plus: SublatticeInputs<F>, minus: SublatticeInputs<F>) -> Self {
        let (r_plus, u_x_plus, u_y_plus, s_plus) = plus.atoms();
        let (r_minus, u_x_minus, u_y_minus, s_minus) = minus.atoms();
        PmSublattices {
            r_plus,
            u_x_plus,
            u_y_plus,
            s_plus,
            r_minus,
            u_x_minus,
            u_y_minus,
            s_minus,
        }
    }

    /// `(R, U_X, U_Y, S)` as plus minus minus.
    pub fn atoms(&self) -> [ExtReal<F>; 4] {
        [
            self.r_plus - self.r_minus,
            self.u_x_plus - self.u_x_minus,
            self.u_y_plus - self.u_y_minus,
            self.s_plus - self.s_minus,
        ]
    }

    pub fn components(&self) -> [ExtReal<F>; 8] {
        [
            self.r_plus,
            self.u_x_plus,
            self.u_y_plus,
            self.s_plus,
            self.r_minus,
            self.u_x_minus,
            self.u_y_minus,
            self.s_minus,
        ]
    }

    fn scaled(self, k: F) -> Self {
        PmSublattices {
            r_plus: self.r_plus * k,
            u_x_plus: self.u_x_plus * k,
            u_y_plus: self.u_y_plus * k,
            s_plus: self.s_plus * k,
            r_minus: self.r_minus * k,
            u_x_minus: self.u_x_minus * k,
            u_y_minus: self.u_y_minus * k,
            s_minus: self.s_minus * k,
        }
    }
}

/// Redundant term and entropic components of one `I_PM` sublattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SublatticeInputs<F> {
    pub redundancy: ExtReal<F>,
    pub h_x: ExtReal<F>,
    pub h_y: ExtReal<F>,
    pub h_xy: ExtReal<F>,
}

impl<F: Real> SublatticeInputs<F> {
    fn atoms(&self) -> (ExtReal<F>, ExtReal<F>, ExtReal<F>, ExtReal<F>) {
        let r = self.redundancy;
        (
            r,
            self.h_x - r,
            self.h_y - r,
            self.h_xy - self.h_x - self.h_y + r,
        )
    }
}

/// The four atoms of a bivariate decomposition together with the three mutual
/// informations they partition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BivariatePid<F> {
    pub kind: PidKind,
    pub r: ExtReal<F>,
    pub u_x: ExtReal<F>,
    pub u_y: ExtReal<F>,
    pub s: ExtReal<F>,
    pub mi_x: ExtReal<F>,
    pub mi_y: ExtReal<F>,
    pub mi_xy: ExtReal<F>,
    /// Present for `I_PM` decompositions.
    pub sublattices: Option<PmSublattices<F>>,
}

impl<F: Real> BivariatePid<F> {
    /// Derives the unique and synergistic atoms from a redundancy value.
    pub fn from_redundancy(
        kind: PidKind,
        r: ExtReal<F>,
        mi_x: ExtReal<F>,
        mi_y: ExtReal<F>,
        mi_xy: ExtReal<F>,
    ) -> Self {
        BivariatePid {
            kind,
            r,
            u_x: mi_x - r,
            u_y: mi_y - r,
            s: mi_xy - mi_x - mi_y + r,
            mi_x,
            mi_y,
            mi_xy,
            sublattices: None,
        }
    }

    /// `[R, U_X, U_Y, S]`.
    pub fn atoms(&self) -> [ExtReal<F>; 4] {
        [self.r, self.u_x, self.u_y, self.s]
    }

    /// Largest violation of the three partition identities over the identities whose
    /// terms are all finite. Zero when no identity is fully finite.
    pub fn identity_residual(&self) -> F {
        let finite = |vals: &[ExtReal<F>]| vals.iter().map(|v| v.value()).collect::<Option<Vec<F>>>();
        let mut worst = F::zero();
        if let Some(v) = finite(&[self.mi_x, self.r, self.u_x]) {
            worst = worst.max((v[0] - v[1] - v[2]).abs());
        }
        if let Some(v) = finite(&[self.mi_y, self.r, self.u_y]) {
            worst = worst.max((v[0] - v[1] - v[2]).abs());
        }
        if let Some(v) = finite(&[self.mi_xy, self.r, self.u_x, self.u_y, self.s]) {
            worst = worst.max((v[0] - v[1] - v[2] - v[3] - v[4]).abs());
        }
        worst
    }

    pub fn satisfies_identities(&self, tol: F) -> bool {
        self.identity_residual() <= tol
    }

    /// Every value converted to the requested unit.
    pub fn in_units(&self, units: Units) -> Self {
        let k = units.factor::<F>();
        BivariatePid {
            kind: self.kind,
            r: self.r * k,
            u_x: self.u_x * k,
            u_y: self.u_y * k,
            s: self.s * k,
            mi_x: self.mi_x * k,
            mi_y: self.mi_y * k,
            mi_xy: self.mi_xy * k,
            sublattices: self.sublattices.map(|s| s.scaled(k)),
        }
    }
}

/// An `I_PM` decomposition; `sublattices` is always populated.
pub type PmLattice<F> = BivariatePid<F>;

/// `E_T[min_k I_{X_k}(T)]` over any number of sources. Each joint pairs one source with
/// the common target (source first); all must share the same target marginal.
pub fn imin_redundancy_of<F: Real>(sources: &[&DiscreteJoint2<F>]) -> Result<F, InfoError> {
    let first = sources
        .first()
        .ok_or_else(|| InfoError::Input("at least one source required".into()))?;
    let pt = first.marginal_y();
    let tol = F::renormalize_tolerance();
    for s in &sources[1..] {
        if s.alphabet_y() != first.alphabet_y() {
            return Err(InfoError::AlphabetMismatch("target alphabets differ between sources".into()));
        }
        let other = s.marginal_y();
        if pt.probs().iter().zip(other.probs()).any(|(a, b)| (*a - *b).abs() > tol) {
            return Err(InfoError::Input("sources disagree on the target marginal".into()));
        }
    }
    let profiles: Vec<Vec<F>> = sources.iter().map(|s| specific_information_profile(s)).collect();
    Ok(pt
        .probs()
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > F::zero())
        .map(|(t, &p)| {
            let m = profiles.iter().map(|prof| prof[t]).fold(F::infinity(), F::min);
            p * m
        })
        .sum())
}

/// Williams–Beer redundancy `E_T[min(I_X(T), I_Y(T))]`.
pub fn imin_redundancy<F: Real>(joint: &DiscreteJoint3<F>) -> F {
    let xt = joint.pair(Axis::X, Axis::T);
    let yt = joint.pair(Axis::Y, Axis::T);
    imin_redundancy_of(&[&xt, &yt]).expect("marginals of one joint agree")
}

fn mutual_informations<F: Real>(joint: &DiscreteJoint3<F>) -> (F, F, F) {
    let (nx, ny, nt) = joint.shape();
    (
        mutual_information(&joint.pair(Axis::X, Axis::T)),
        mutual_information(&joint.pair(Axis::Y, Axis::T)),
        mi_table(joint.table(), nx * ny, nt),
    )
}

pub fn imin_pid<F: Real>(joint: &DiscreteJoint3<F>) -> BivariatePid<F> {
    let (mi_x, mi_y, mi_xy) = mutual_informations(joint);
    BivariatePid::from_redundancy(
        PidKind::Imin,
        imin_redundancy(joint).into(),
        mi_x.into(),
        mi_y.into(),
        mi_xy.into(),
    )
}

/// Specificity and ambiguity sublattices. The plus lattice uses marginal surprisals
/// `-ln p(x)`, `-ln p(y)`; the minus lattice uses `-ln p(x|t)`, `-ln p(y|t)`. All
/// entropic components come from the same table.
pub fn ipm_sublattices<F: Real>(joint: &DiscreteJoint3<F>) -> PmSublattices<F> {
    let (nx, ny, nt) = joint.shape();
    let px = joint.marginal(Axis::X);
    let py = joint.marginal(Axis::Y);
    let pt = joint.marginal(Axis::T);
    let pxt = joint.pair(Axis::X, Axis::T);
    let pyt = joint.pair(Axis::Y, Axis::T);
    let pxy = joint.pair(Axis::X, Axis::Y);

    let mut r_plus = F::zero();
    let mut r_minus = F::zero();
    for x in 0..nx {
        for y in 0..ny {
            for t in 0..nt {
                let p = joint.p(x, y, t);
                if p <= F::zero() {
                    continue;
                }
                let sx = -px.probs()[x].ln();
                let sy = -py.probs()[y].ln();
                r_plus = r_plus + p * sx.min(sy);
                let ptt = pt.probs()[t];
                let sx_t = -(pxt.p(x, t) / ptt).ln();
                let sy_t = -(pyt.p(y, t) / ptt).ln();
                r_minus = r_minus + p * sx_t.min(sy_t);
            }
        }
    }

    let h_t = entropy_of(pt.probs());
    let h_xt = entropy_of(pxt.table());
    let h_yt = entropy_of(pyt.table());
    let h_xyt = entropy_of(joint.table());
    let plus = SublatticeInputs {
        redundancy: r_plus.into(),
        h_x: entropy_of(px.probs()).into(),
        h_y: entropy_of(py.probs()).into(),
        h_xy: entropy_of(pxy.table()).into(),
    };
    let minus = SublatticeInputs {
        redundancy: r_minus.into(),
        h_x: (h_xt - h_t).into(),
        h_y: (h_yt - h_t).into(),
        h_xy: (h_xyt - h_t).into(),
    };
    PmSublattices::from_components(plus, minus)
}

pub fn ipm_pid<F: Real>(joint: &DiscreteJoint3<F>) -> BivariatePid<F> {
    let (mi_x, mi_y, mi_xy) = mutual_informations(joint);
    let lattices = ipm_sublattices(joint);
    let [r, u_x, u_y, s] = lattices.atoms();
    BivariatePid {
        kind: PidKind::Ipm,
        r,
        u_x,
        u_y,
        s,
        mi_x: mi_x.into(),
        mi_y: mi_y.into(),
        mi_xy: mi_xy.into(),
        sublattices: Some(lattices),
    }
}

pub fn pid<F: Real>(joint: &DiscreteJoint3<F>, kind: PidKind) -> BivariatePid<F> {
    match kind {
        PidKind::Imin => imin_pid(joint),
        PidKind::Ipm => ipm_pid(joint),
    }
}

/// Inter-PID atom differences (`p2 − p1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservationReport<F> {
    pub delta_r: ExtReal<F>,
    pub delta_u_x: ExtReal<F>,
    pub delta_u_y: ExtReal<F>,
    pub delta_s: ExtReal<F>,
    /// The common value `ΔR = ΔS = −ΔU_X = −ΔU_Y` (taken from the finite terms).
    pub delta: F,
    /// Largest disagreement among the finite terms.
    pub max_deviation: F,
}

/// Checks `ΔR = ΔS = −ΔU_X = −ΔU_Y` between two decompositions of the same joint.
pub fn pid_conservation_check<F: Real>(
    p1: &BivariatePid<F>,
    p2: &BivariatePid<F>,
) -> Result<ConservationReport<F>, InfoError> {
    let tol = F::lit(1e-10);
    for (name, a, b) in [
        ("I(T;X)", p1.mi_x, p2.mi_x),
        ("I(T;Y)", p1.mi_y, p2.mi_y),
        ("I(T;X,Y)", p1.mi_xy, p2.mi_xy),
    ] {
        if !a.approx_eq(&b, tol) {
            return Err(InfoError::Input(format!(
                "decompositions disagree on {name}: {a} vs {b}"
            )));
        }
    }
    let delta_r = p2.r - p1.r;
    let delta_u_x = p2.u_x - p1.u_x;
    let delta_u_y = p2.u_y - p1.u_y;
    let delta_s = p2.s - p1.s;
    let candidates: Vec<F> = [delta_r, -delta_u_x, -delta_u_y, delta_s]
        .iter()
        .filter_map(|d| d.value())
        .collect();
    if candidates.is_empty() {
        return Err(InfoError::Input("no finite atom differences to compare".into()));
    }
    let delta = candidates[0];
    let max_deviation = candidates
        .iter()
        .map(|&c| (c - delta).abs())
        .fold(F::zero(), F::max);
    if max_deviation > tol {
        return Err(InfoError::Input(format!(
            "conservation violated: atom differences disagree by {max_deviation}"
        )));
    }
    Ok(ConservationReport {
        delta_r,
        delta_u_x,
        delta_u_y,
        delta_s,
        delta,
        max_deviation,
    })
}

/// Outcome of checking a PID against the conditional independence `X ⊥ T | Y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditReport<F> {
    pub kind: PidKind,
    /// `I(T; X | Y)`.
    pub cmi: F,
    pub u_x: ExtReal<F>,
    pub s: ExtReal<F>,
    /// `I(T; X | Y)` below the independence threshold.
    pub conditionally_independent: bool,
    /// Independent, yet `|U_X|` or `|S|` is materially nonzero.
    pub violation: bool,
}

pub const AUDIT_CMI_THRESHOLD: f64 = 1e-10;
pub const AUDIT_ATOM_THRESHOLD: f64 = 1e-8;

pub fn conditional_independence_audit<F: Real>(joint: &DiscreteJoint3<F>, kind: PidKind) -> AuditReport<F> {
    let cmi = conditional_mi(joint);
    let d = pid(joint, kind);
    let independent = cmi < F::lit(AUDIT_CMI_THRESHOLD);
    let big = |v: ExtReal<F>| !v.approx_eq(&ExtReal::zero(), F::lit(AUDIT_ATOM_THRESHOLD));
    AuditReport {
        kind,
        cmi,
        u_x: d.u_x,
        s: d.s,
        conditionally_independent: independent,
        violation: independent && (big(d.u_x) || big(d.s)),
    }
}

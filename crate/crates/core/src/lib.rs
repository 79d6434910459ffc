//! Discrete and Gaussian partial information decomposition, with Monte Carlo
//! estimators for noise-free interactions and a synthetic interaction-network model.
//!
//! All quantities are in nats. The math is generic over the scalar type; the aliases at
//! the bottom fix it to `f64`.

pub mod dist;
pub mod error;
pub mod ext_real;
pub mod gaussian;
pub mod kernel;
pub mod mc;
pub mod network;
pub mod measures;
pub mod pid;
pub mod quadrature;
pub mod scalar;

pub use dist::{Alphabet, Axis, DiscreteDist, DiscreteJoint2, DiscreteJoint3};
pub use error::{InfoError, ModelError};
pub use ext_real::ExtReal;
pub use gaussian::{
    conditional_gaussian, f_gamma, gauss_linear_transform, kl_gaussians, linear_imin_pid, linear_ipm_pid,
    linear_limits, linear_mi, linear_specific_info, specificity_constant, GaussianParams, LimitRow,
    LinearInteraction, LinearMi, SmallMatrix,
};
pub use kernel::{KernelSpec, Linear as LinearKernel, NfbiKernel, Sigmoidal, SymmetricSum};
pub use mc::{
    density_ratio_identity_check, infinite_mi_flag, limit_sweep, mc_rmin_linear, mc_rplus, mc_umin_x, mc_umin_y,
    mc_upm_minus_x, mc_upm_minus_y, mc_upm_x, mc_upm_y, KernelFamily, McEstimate, SweepRow,
};
pub use network::{
    network_a, network_b, network_b_false_pairs, sample, taylor_coefficients, InteractionNetwork, NetworkSpec,
    SampleBatch, TaylorCoefficients,
};
pub use measures::{
    conditional_entropy, conditional_mi, entropy, interaction_information, kl_divergence, mutual_information,
    specific_information, specific_information_profile,
};
pub use pid::{
    conditional_independence_audit, imin_pid, imin_redundancy, imin_redundancy_of, ipm_pid, ipm_sublattices, pid,
    pid_conservation_check, AuditReport, BivariatePid, ConservationReport, PidKind, PmLattice, PmSublattices,
    SublatticeInputs,
};
pub use scalar::{Real, Units};

pub type Dist = DiscreteDist<f64>;
pub type Joint2 = DiscreteJoint2<f64>;
pub type Joint3 = DiscreteJoint3<f64>;
pub type Ext = ExtReal<f64>;
pub type Pid = BivariatePid<f64>;
pub type Linear = LinearInteraction<f64>;

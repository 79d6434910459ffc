//! Scalar abstraction shared by the discrete and analytic modules.

use num_traits::{Float, FloatConst, FromPrimitive};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Floating point scalar the information measures are generic over: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Sum + Default + Send + Sync + 'static
{
    /// Largest deviation of a probability table's total from 1 that constructors
    /// silently renormalize.
    fn renormalize_tolerance() -> Self;

    /// Converts an `f64` literal. Lossy for `f32`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }
}

impl Real for f64 {
    fn renormalize_tolerance() -> Self {
        1e-9
    }
}

impl Real for f32 {
    // 1e-9 is below f32 resolution; allow accumulation error over a few thousand cells.
    fn renormalize_tolerance() -> Self {
        1e-4
    }
}

/// `p * ln(p / q)` with the `0 ln 0 = 0` convention. Caller guarantees `q > 0` when `p > 0`.
#[inline]
pub(crate) fn xlogy_ratio<F: Real>(p: F, q: F) -> F {
    if p > F::zero() {
        p * (p / q).ln()
    } else {
        F::zero()
    }
}

/// `-p ln p` with `0 ln 0 = 0`.
#[inline]
pub(crate) fn neg_plogp<F: Real>(p: F) -> F {
    if p > F::zero() {
        -p * p.ln()
    } else {
        F::zero()
    }
}

/// Output unit for information values. Everything is computed in nats; bits are a
/// display-time conversion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    #[default]
    Nats,
    Bits,
}

impl Units {
    /// Multiplier taking a value in nats to this unit.
    pub fn factor<F: Real>(self) -> F {
        match self {
            Units::Nats => F::one(),
            Units::Bits => F::one() / F::LN_2(),
        }
    }
}

impl std::str::FromStr for Units {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nats" => Ok(Units::Nats),
            "bits" => Ok(Units::Bits),
            other => Err(format!("unknown units {other:?} (expected nats or bits)")),
        }
    }
}

impl std::fmt::Display for Units {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Units::Nats => "nats",
            Units::Bits => "bits",
        })
    }
}

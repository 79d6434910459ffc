//! Extended reals: finite values, both infinities and an absorbing indeterminate.

use crate::scalar::Real;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A value in the extended real line, plus `Indeterminate` for `∞ − ∞` and `0 · ∞`.
///
/// Constructing from a float maps `±inf` to the symbolic infinities and `NaN` to
/// `Indeterminate`, so `Finite` always holds a finite value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal<F> {
    Finite(F),
    PosInf,
    NegInf,
    Indeterminate,
}

impl<F: Real> ExtReal<F> {
    pub fn finite(value: F) -> Self {
        Self::from(value)
    }

    pub fn zero() -> Self {
        ExtReal::Finite(F::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn is_indeterminate(&self) -> bool {
        matches!(self, ExtReal::Indeterminate)
    }

    /// The finite value, if any.
    pub fn value(&self) -> Option<F> {
        match *self {
            ExtReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Lossy conversion back to a float (`±inf`, `NaN` for indeterminate).
    pub fn to_float(&self) -> F {
        match *self {
            ExtReal::Finite(v) => v,
            ExtReal::PosInf => F::infinity(),
            ExtReal::NegInf => F::neg_infinity(),
            ExtReal::Indeterminate => F::nan(),
        }
    }

    /// True when both are finite and within `tol`, or both are the same non-finite variant.
    pub fn approx_eq(&self, other: &Self, tol: F) -> bool {
        match (*self, *other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => (a - b).abs() <= tol,
            (a, b) => a == b,
        }
    }

    /// `self >= bound`; infinities compare in the obvious way, indeterminate never does.
    pub fn at_least(&self, bound: F) -> bool {
        match *self {
            ExtReal::Finite(v) => v >= bound,
            ExtReal::PosInf => true,
            ExtReal::NegInf | ExtReal::Indeterminate => false,
        }
    }
}

impl<F: Real> From<F> for ExtReal<F> {
    fn from(value: F) -> Self {
        if value.is_nan() {
            ExtReal::Indeterminate
        } else if value.is_infinite() {
            if value > F::zero() {
                ExtReal::PosInf
            } else {
                ExtReal::NegInf
            }
        } else {
            ExtReal::Finite(value)
        }
    }
}

impl<F: Real> Add for ExtReal<F> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        use ExtReal::*;
        match (self, rhs) {
            (Indeterminate, _) | (_, Indeterminate) => Indeterminate,
            (Finite(a), Finite(b)) => ExtReal::from(a + b),
            (PosInf, NegInf) | (NegInf, PosInf) => Indeterminate,
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
        }
    }
}

impl<F: Real> Neg for ExtReal<F> {
    type Output = Self;

    fn neg(self) -> Self {
        match self {
            ExtReal::Finite(v) => ExtReal::Finite(-v),
            ExtReal::PosInf => ExtReal::NegInf,
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::Indeterminate => ExtReal::Indeterminate,
        }
    }
}

impl<F: Real> Sub for ExtReal<F> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Real> Add<F> for ExtReal<F> {
    type Output = Self;

    fn add(self, rhs: F) -> Self {
        self + ExtReal::from(rhs)
    }
}

impl<F: Real> Sub<F> for ExtReal<F> {
    type Output = Self;

    fn sub(self, rhs: F) -> Self {
        self - ExtReal::from(rhs)
    }
}

/// Scaling by a float; `0 · ∞` is indeterminate.
impl<F: Real> Mul<F> for ExtReal<F> {
    type Output = Self;

    fn mul(self, k: F) -> Self {
        match self {
            ExtReal::Finite(v) => ExtReal::from(v * k),
            ExtReal::Indeterminate => ExtReal::Indeterminate,
            _ if k.is_nan() || k == F::zero() => ExtReal::Indeterminate,
            inf if k > F::zero() => inf,
            inf => -inf,
        }
    }
}

/// Finite values print with the float's `Display`; infinities as `inf` / `-inf`,
/// indeterminate as `nan`.
impl<F: Real> fmt::Display for ExtReal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => fmt::Display::fmt(v, f),
            ExtReal::PosInf => f.pad("inf"),
            ExtReal::NegInf => f.pad("-inf"),
            ExtReal::Indeterminate => f.pad("nan"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = ExtReal<f64>;

    #[test]
    fn arithmetic_table() {
        assert_eq!(E::Finite(1.0) + E::Finite(2.0), E::Finite(3.0));
        assert_eq!(E::Finite(1.0) + E::PosInf, E::PosInf);
        assert_eq!(E::Finite(1.0) + E::NegInf, E::NegInf);
        assert_eq!(E::PosInf - E::PosInf, E::Indeterminate);
        assert_eq!(E::PosInf + E::NegInf, E::Indeterminate);
        assert_eq!(E::PosInf - E::NegInf, E::PosInf);
        assert_eq!(E::Indeterminate + E::Finite(0.0), E::Indeterminate);
        assert_eq!(E::Indeterminate - E::PosInf, E::Indeterminate);
        assert_eq!(-E::NegInf, E::PosInf);
    }

    #[test]
    fn scaling() {
        assert_eq!(E::PosInf * 2.0, E::PosInf);
        assert_eq!(E::PosInf * -1.0, E::NegInf);
        assert_eq!(E::NegInf * 0.0, E::Indeterminate);
        assert_eq!(E::Finite(2.0) * 0.5, E::Finite(1.0));
    }

    #[test]
    fn from_float_maps_specials() {
        assert_eq!(E::from(f64::INFINITY), E::PosInf);
        assert_eq!(E::from(f64::NEG_INFINITY), E::NegInf);
        assert!(E::from(f64::NAN).is_indeterminate());
        // overflow of a finite sum becomes symbolic
        assert_eq!(E::Finite(f64::MAX) + E::Finite(f64::MAX), E::PosInf);
    }

    #[test]
    fn display() {
        assert_eq!(E::PosInf.to_string(), "inf");
        assert_eq!(E::NegInf.to_string(), "-inf");
        assert_eq!(E::Finite(0.5).to_string(), "0.5");
    }
}

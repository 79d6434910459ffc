//! Noise-free bivariate interaction kernels `T = g(X, Y)`.

use serde::{Deserialize, Serialize};

/// A smooth bivariate map with its partial derivatives.
pub trait NfbiKernel: Send + Sync {
    fn eval(&self, x: f64, y: f64) -> f64;
    fn d_x(&self, x: f64, y: f64) -> f64;
    fn d_y(&self, x: f64, y: f64) -> f64;

    /// `ln(|∂y g| / |∂x g|)`. Kernels override this when the direct quotient loses
    /// precision. `None` where either derivative vanishes.
    fn log_partial_ratio(&self, x: f64, y: f64) -> Option<f64> {
        let (dx, dy) = (self.d_x(x, y).abs(), self.d_y(x, y).abs());
        if dx == 0.0 || dy == 0.0 || !dx.is_finite() || !dy.is_finite() {
            return None;
        }
        Some(dy.ln() - dx.ln())
    }

    fn name(&self) -> String;
}

/// `g = a·x + b·y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Linear {
    pub a: f64,
    pub b: f64,
}

impl NfbiKernel for Linear {
    fn eval(&self, x: f64, y: f64) -> f64 {
        self.a * x + self.b * y
    }

    fn d_x(&self, _x: f64, _y: f64) -> f64 {
        self.a
    }

    fn d_y(&self, _x: f64, _y: f64) -> f64 {
        self.b
    }

    fn name(&self) -> String {
        format!("linear(a={}, b={})", self.a, self.b)
    }
}

/// `g = y / (1 + e^{α − x})`: `x` switches the `y` signal on once it exceeds `α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sigmoidal {
    pub alpha: f64,
}

impl Sigmoidal {
    fn gate(&self, x: f64) -> f64 {
        1.0 / (1.0 + (self.alpha - x).exp())
    }
}

impl NfbiKernel for Sigmoidal {
    fn eval(&self, x: f64, y: f64) -> f64 {
        y * self.gate(x)
    }

    fn d_x(&self, x: f64, y: f64) -> f64 {
        let s = self.gate(x);
        y * s * (1.0 - s)
    }

    fn d_y(&self, x: f64, _y: f64) -> f64 {
        self.gate(x)
    }

    // |∂y| / |∂x| = 1 / (|y| (1 - s)) = (1 + e^{x-α}) / |y|
    fn log_partial_ratio(&self, x: f64, y: f64) -> Option<f64> {
        if y == 0.0 || !y.is_finite() {
            return None;
        }
        let z = x - self.alpha;
        let softplus = if z > 0.0 { z + (-z).exp().ln_1p() } else { z.exp().ln_1p() };
        Some(softplus - y.abs().ln())
    }

    fn name(&self) -> String {
        format!("sigmoidal(alpha={})", self.alpha)
    }
}

/// `g = x + y`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SymmetricSum;

impl NfbiKernel for SymmetricSum {
    fn eval(&self, x: f64, y: f64) -> f64 {
        x + y
    }

    fn d_x(&self, _x: f64, _y: f64) -> f64 {
        1.0
    }

    fn d_y(&self, _x: f64, _y: f64) -> f64 {
        1.0
    }

    fn log_partial_ratio(&self, _x: f64, _y: f64) -> Option<f64> {
        Some(0.0)
    }

    fn name(&self) -> String {
        "symmetric-sum".into()
    }
}

/// Serializable kernel choice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum KernelSpec {
    Linear { a: f64, b: f64 },
    Sigmoidal { alpha: f64 },
    Symmetric,
}

impl KernelSpec {
    pub fn build(&self) -> Box<dyn NfbiKernel> {
        match *self {
            KernelSpec::Linear { a, b } => Box::new(Linear { a, b }),
            KernelSpec::Sigmoidal { alpha } => Box::new(Sigmoidal { alpha }),
            KernelSpec::Symmetric => Box::new(SymmetricSum),
        }
    }
}

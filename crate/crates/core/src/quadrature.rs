//! Adaptive Simpson integration.

use crate::scalar::Real;

/// Integrates `f` over `[a, b]` to absolute tolerance `tol` by recursive Simpson
/// bisection with Richardson correction. Recursion stops at `max_depth`.
pub fn adaptive_simpson<F: Real>(f: impl Fn(F) -> F, a: F, b: F, tol: F, max_depth: u32) -> F {
    let two = F::lit(2.0);
    let m = (a + b) / two;
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    refine(&f, a, b, fa, fm, fb, whole, tol, max_depth)
}

fn simpson<F: Real>(a: F, b: F, fa: F, fm: F, fb: F) -> F {
    (b - a) / F::lit(6.0) * (fa + F::lit(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Real>(f: &impl Fn(F) -> F, a: F, b: F, fa: F, fm: F, fb: F, whole: F, tol: F, depth: u32) -> F {
    let two = F::lit(2.0);
    let m = (a + b) / two;
    let (lm, rm) = ((a + m) / two, (m + b) / two);
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= F::lit(15.0) * tol {
        return left + right + delta / F::lit(15.0);
    }
    refine(f, a, m, fa, flm, fm, left, tol / two, depth - 1)
        + refine(f, m, b, fm, frm, fb, right, tol / two, depth - 1)
}

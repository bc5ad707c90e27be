//! Adaptive Simpson quadrature.

use crate::error::{Error, Result};
use crate::scalar::{abs, lit, Real};

const MAX_DEPTH: u32 = 48;

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Reversed limits give the negated integral; an empty interval gives zero.
pub fn integrate<T: Real>(f: impl Fn(T) -> T, a: T, b: T, tol: T) -> Result<T> {
    if a == b {
        return Ok(T::zero());
    }
    if a > b {
        return integrate(f, b, a, tol).map(|v| -v);
    }
    // Seed with a few panels so narrow features away from the midpoint are seen.
    let panels = 8usize;
    let width = (b - a) / lit(panels as f64);
    let panel_tol = tol / lit(panels as f64);
    let mut total = T::zero();
    for p in 0..panels {
        let lo = a + width * lit(p as f64);
        let hi = if p + 1 == panels { b } else { lo + width };
        let fa = f(lo);
        let fb = f(hi);
        let m = (lo + hi) * lit(0.5);
        let fm = f(m);
        let whole = simpson(lo, hi, fa, fm, fb);
        total = total + refine(&f, lo, hi, fa, fm, fb, whole, panel_tol, MAX_DEPTH)?;
    }
    Ok(total)
}

fn simpson<T: Real>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / lit(6.0) * (fa + lit::<T>(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<T: Real>(
    f: &impl Fn(T) -> T,
    a: T,
    b: T,
    fa: T,
    fm: T,
    fb: T,
    whole: T,
    tol: T,
    depth: u32,
) -> Result<T> {
    let m = (a + b) * lit(0.5);
    let lm = (a + m) * lit(0.5);
    let rm = (m + b) * lit(0.5);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if !delta.is_finite() {
        return Err(quadrature_error(a, b, whole, delta));
    }
    if abs(delta) <= lit::<T>(15.0) * tol {
        return Ok(left + right + delta / lit(15.0));
    }
    if depth == 0 {
        return Err(quadrature_error(a, b, left + right, delta));
    }
    let half_tol = tol * lit(0.5);
    Ok(refine(f, a, m, fa, flm, fm, left, half_tol, depth - 1)?
        + refine(f, m, b, fm, frm, fb, right, half_tol, depth - 1)?)
}

fn quadrature_error<T: Real>(a: T, b: T, estimate: T, error: T) -> Error {
    Error::Quadrature {
        a: a.to_f64().unwrap_or(f64::NAN),
        b: b.to_f64().unwrap_or(f64::NAN),
        estimate: estimate.to_f64().unwrap_or(f64::NAN),
        error: error.to_f64().unwrap_or(f64::NAN),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let v = integrate(|x: f64| x * x * x - 2.0 * x + 1.0, -1.0, 2.0, 1e-12).unwrap();
        assert!((v - (15.0 / 4.0 - 3.0 + 3.0)).abs() < 1e-12);
    }

    #[test]
    fn gaussian_matches_error_function_value() {
        // ∫_{-3}^{3} e^{-x²} dx = √π·erf(3)
        let expected = std::f64::consts::PI.sqrt() * 0.999_977_909_503_001_4;
        let v = integrate(|x: f64| (-x * x).exp(), -3.0, 3.0, 1e-12).unwrap();
        assert!((v - expected).abs() < 1e-11);
    }

    #[test]
    fn reversed_limits_negate() {
        let v = integrate(|x: f64| x.cos(), 1.0, 0.0, 1e-12).unwrap();
        assert!((v + 1f64.sin()).abs() < 1e-12);
        assert_eq!(integrate(|x: f64| x, 2.0, 2.0, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn reports_non_convergence() {
        let r = integrate(|x: f64| 1.0 / x.abs().sqrt().max(0.0), -1.0, 1.0, 1e-14);
        assert!(r.is_err());
        let r = integrate(|_x: f64| f64::NAN, 0.0, 1.0, 1e-10);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }
}

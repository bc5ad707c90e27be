//! Sponge damping profile and closed-form solutions of the damped wave
//! equation `η_tt − η_xx + 2bη_t + b²η = 0`, used as a validation oracle for
//! the sponge terms of the Boussinesq solver.

use crate::error::{Error, Result};
use crate::quadrature;
use crate::scalar::{abs, lit, Real};
use crate::spectral::Grid;

/// Absorption intensity used when none is configured.
pub const DEFAULT_INTENSITY: f64 = 10.0;
/// Plateau edge used on the reference grid (`L = 102.4`).
pub const DEFAULT_EDGE: f64 = 90.0;
/// Distance between the plateau edge and the domain boundary on the reference grid.
pub const DEFAULT_MARGIN: f64 = 12.4;
/// Quadrature tolerance for the closed-form solutions.
pub const QUADRATURE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Shape<T> {
    /// `(a1/2)(tanh(x − x_left) − tanh(x − x_right)) − a1`
    Tanh { x_left: T, x_right: T },
    /// `s ≡ −a1` everywhere.
    Uniform,
}

/// Damping function `s(x) ≤ 0` sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpongeProfile<T> {
    a1: T,
    shape: Shape<T>,
    samples: Vec<T>,
}

impl<T: Real> SpongeProfile<T> {
    /// Two-edge tanh profile: near zero on `(x_left, x_right)`, `−a1` outside.
    pub fn new(a1: T, x_left: T, x_right: T, grid: &Grid<T>) -> Result<Self> {
        if !(a1 >= T::zero()) {
            return Err(Error::InvalidSponge(format!(
                "absorption intensity must be non-negative, got {a1}"
            )));
        }
        if !(x_left < x_right) {
            return Err(Error::InvalidSponge(format!(
                "plateau edges must satisfy x_left < x_right, got {x_left} >= {x_right}"
            )));
        }
        let profile = Self::sampled(a1, Shape::Tanh { x_left, x_right }, grid);
        let l = grid.half_length();
        let edge = abs(profile.eval(-l)).min(abs(profile.eval(l)));
        if a1 > T::zero() && edge < lit::<T>(0.99) * a1 {
            log::warn!("sponge does not saturate at the boundary: |s(±L)| = {edge} < 0.99·{a1}");
        }
        Ok(profile)
    }

    /// Symmetric profile `(a1/2)(tanh(x + a2) − tanh(x − a2)) − a1`.
    pub fn symmetric(a1: T, a2: T, grid: &Grid<T>) -> Result<Self> {
        Self::new(a1, -a2, a2, grid)
    }

    /// Symmetric profile whose edges sit `margin` inside the domain boundary.
    pub fn with_margin(a1: T, margin: T, grid: &Grid<T>) -> Result<Self> {
        let edge = grid.half_length() - margin;
        if !(edge > T::zero()) {
            return Err(Error::InvalidSponge(format!(
                "margin {margin} leaves no plateau on a domain of half length {}",
                grid.half_length()
            )));
        }
        Self::symmetric(a1, edge, grid)
    }

    /// Constant damping `s ≡ −b`.
    pub fn uniform(b: T, grid: &Grid<T>) -> Result<Self> {
        if !(b >= T::zero()) {
            return Err(Error::InvalidSponge(format!(
                "damping must be non-negative, got {b}"
            )));
        }
        Ok(Self::sampled(b, Shape::Uniform, grid))
    }

    fn sampled(a1: T, shape: Shape<T>, grid: &Grid<T>) -> Self {
        let mut profile = Self {
            a1,
            shape,
            samples: Vec::new(),
        };
        profile.samples = grid.points().iter().map(|&x| profile.eval(x)).collect();
        profile
    }

    /// Evaluates `s(x)` at an arbitrary point.
    pub fn eval(&self, x: T) -> T {
        match self.shape {
            Shape::Tanh { x_left, x_right } => {
                self.a1 * lit(0.5) * ((x - x_left).tanh() - (x - x_right).tanh()) - self.a1
            }
            Shape::Uniform => -self.a1,
        }
    }

    pub fn intensity(&self) -> T {
        self.a1
    }

    /// Plateau edges, or `None` for a uniform profile.
    pub fn edges(&self) -> Option<(T, T)> {
        match self.shape {
            Shape::Tanh { x_left, x_right } => Some((x_left, x_right)),
            Shape::Uniform => None,
        }
    }

    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    /// True when every sample is exactly zero.
    pub fn is_inactive(&self) -> bool {
        self.samples.iter().all(|&s| s == T::zero())
    }

    /// Grid points where the sponge is past half strength, `s(x) < −a1/2`.
    pub fn absorbing_mask(&self) -> Vec<bool> {
        let threshold = -self.a1 * lit(0.5);
        self.samples.iter().map(|&s| s < threshold).collect()
    }

    /// Whether `[x_min, x_max]` lies strictly inside the plateau.
    pub fn contains_window(&self, x_min: T, x_max: T) -> bool {
        match self.shape {
            Shape::Tanh { x_left, x_right } => x_left < x_min && x_max < x_right,
            Shape::Uniform => self.a1 == T::zero(),
        }
    }
}

/// Initial-value problem for the damped wave equation with constant damping `b`.
#[derive(Clone, Copy)]
pub struct DampedWaveProblem<F, G, T> {
    /// Initial displacement `η(x, 0)`.
    pub f: F,
    /// Initial velocity `η_t(x, 0)`.
    pub g: G,
    pub b: T,
}

impl<F, G, T> DampedWaveProblem<F, G, T>
where
    F: Fn(T) -> T,
    G: Fn(T) -> T,
    T: Real,
{
    pub fn new(f: F, g: G, b: T) -> Result<Self> {
        if !(b >= T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "damping b must be non-negative, got {b}"
            )));
        }
        Ok(Self { f, g, b })
    }

    /// Exact solution at `(x, t)`.
    pub fn solution(&self, x: T, t: T) -> Result<T> {
        damped_wave_exact(self, x, t)
    }
}

fn check_time<T: Real>(t: T) -> Result<()> {
    if !(t >= T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "time must be non-negative, got {t}"
        )));
    }
    Ok(())
}

/// d'Alembert solution of `η_tt = η_xx` with `η(x,0) = f`, `η_t(x,0) = g`.
pub fn dalembert<T: Real>(f: impl Fn(T) -> T, g: impl Fn(T) -> T, x: T, t: T) -> Result<T> {
    check_time(t)?;
    let travelling = (f(x + t) + f(x - t)) * lit(0.5);
    let velocity = quadrature::integrate(g, x - t, x + t, lit(QUADRATURE_TOL))?;
    Ok(travelling + velocity * lit(0.5))
}

/// Closed-form solution of the constant-damping problem:
/// `e^{−bt}[(f(x+t)+f(x−t))/2 + ½∫g + (b/2)∫f]` over `[x−t, x+t]`.
pub fn damped_wave_exact<F, G, T>(problem: &DampedWaveProblem<F, G, T>, x: T, t: T) -> Result<T>
where
    F: Fn(T) -> T,
    G: Fn(T) -> T,
    T: Real,
{
    damped_bracket(&problem.f, &problem.g, problem.b, x, t)
}

/// Same formula with the local damping `b = −s(x)` taken from a sponge profile.
///
/// The formula is exact only where `s` is locally constant.
pub fn damped_wave_sponge<T: Real>(
    f: impl Fn(T) -> T,
    g: impl Fn(T) -> T,
    sponge: &SpongeProfile<T>,
    x: T,
    t: T,
) -> Result<T> {
    damped_bracket(&f, &g, -sponge.eval(x), x, t)
}

fn damped_bracket<T: Real>(
    f: &impl Fn(T) -> T,
    g: &impl Fn(T) -> T,
    b: T,
    x: T,
    t: T,
) -> Result<T> {
    check_time(t)?;
    let tol = lit(QUADRATURE_TOL);
    let travelling = (f(x + t) + f(x - t)) * lit(0.5);
    let velocity = quadrature::integrate(g, x - t, x + t, tol)?;
    let displacement = if b == T::zero() {
        T::zero()
    } else {
        quadrature::integrate(f, x - t, x + t, tol)?
    };
    let bracket = travelling + velocity * lit(0.5) + b * lit(0.5) * displacement;
    Ok((-b * t).exp() * bracket)
}

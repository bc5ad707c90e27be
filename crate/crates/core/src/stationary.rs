//! Stationary solitary waves of the flat-bottom system in the moving frame.
//!
//! Unknowns are the real spectral coefficients `η̃_0..η̃_{n/2}`, `ũ_0..ũ_{n/2}`
//! of even fields plus the Froude number; the remaining coefficients mirror
//! `j ↔ n−j`. The extra equation pins the physical elevation at `x = 0`.

use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::params::PhysicalParams;
use crate::scalar::{abs, count, lit, Real};
use crate::spectral::{Grid, Transform};

/// Solver controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOptions<T> {
    /// Threshold on the mean absolute residual.
    pub tol: T,
    pub max_iter: usize,
    /// Forward-difference step for the Jacobian.
    pub fd_step: T,
}

impl<T: Real> Default for NewtonOptions<T> {
    fn default() -> Self {
        Self {
            tol: lit(1e-10),
            max_iter: 100,
            fd_step: lit(1e-10),
        }
    }
}

/// Starting point for Newton: physical samples and a Froude number.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryGuess<T> {
    pub eta: Vec<T>,
    pub u: Vec<T>,
    pub froude: T,
}

/// A converged stationary wave.
#[derive(Debug, Clone, PartialEq)]
pub struct StationarySolution<T: Real> {
    pub grid: Arc<Grid<T>>,
    pub eta: Vec<T>,
    pub u: Vec<T>,
    pub froude: T,
    /// Pinned elevation at `x = 0`.
    pub amplitude: T,
    /// Mean absolute residual of the returned state.
    pub residual: T,
    /// Newton updates applied.
    pub iterations: usize,
    /// Mean absolute residual before each update, ending with the returned state.
    pub residual_history: Vec<T>,
    /// Largest imaginary residual component dropped by the real reduction.
    pub max_imaginary: T,
    /// Largest `|η(x_j) − η(x_{n−j})|` or `|u(x_j) − u(x_{n−j})|` over all iterates.
    pub symmetry_defect: T,
}

/// `η = A sech²(Kx)`, `K = ½√(3Aα/β)`, with the matching velocity and
/// `F = −(1 + αA/2)`.
pub fn kdv_initial_guess<T: Real>(
    amplitude: T,
    params: &PhysicalParams<T>,
    grid: &Grid<T>,
) -> Result<StationaryGuess<T>> {
    params.validate()?;
    if !(amplitude >= T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "amplitude must be non-negative, got {amplitude}"
        )));
    }
    let k = kdv_wavenumber(amplitude, params);
    let (alpha, beta) = (params.alpha, params.beta);
    let mut eta = Vec::with_capacity(grid.len());
    let mut u = Vec::with_capacity(grid.len());
    for &x in grid.points() {
        let sech = T::one() / (k * x).cosh();
        let tanh = (k * x).tanh();
        let e = amplitude * sech * sech;
        let k2 = k * k;
        let exx = -lit::<T>(2.0) * amplitude * k2 * sech.powi(4)
            + lit::<T>(4.0) * amplitude * k2 * sech * sech * tanh * tanh;
        eta.push(e);
        u.push(e - alpha / lit(4.0) * e * e + beta / lit(6.0) * exx);
    }
    Ok(StationaryGuess {
        eta,
        u,
        froude: kdv_froude(amplitude, params),
    })
}

/// `K = ½√(3Aα/β)`.
pub fn kdv_wavenumber<T: Real>(amplitude: T, params: &PhysicalParams<T>) -> T {
    lit::<T>(0.5) * (lit::<T>(3.0) * amplitude * params.alpha / params.beta).sqrt()
}

/// `F = −(1 + αA/2)`.
pub fn kdv_froude<T: Real>(amplitude: T, params: &PhysicalParams<T>) -> T {
    -(T::one() + params.alpha * amplitude * lit(0.5))
}

/// Residual blocks `(G₁[0..=n/2], G₂[0..=n/2], G₃)` with imaginary parts dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryResidual<T> {
    pub values: Vec<T>,
    pub max_imaginary: T,
}

impl<T: Real> StationaryResidual<T> {
    /// Stopping-criterion value `Σ|G| / (n + 3)`.
    pub fn mean_abs(&self) -> T {
        let sum = self.values.iter().fold(T::zero(), |acc, &v| acc + abs(v));
        sum / count(self.values.len())
    }
}

/// Evaluates the stationary system for full conjugate-symmetric spectra.
///
/// `G₁ = ũ + Fη̃ + α·T(ηu)`, `G₂ = η̃ + Fũ + (α/2)·T(u²) − (β/3)F(ik)²ũ`,
/// `G₃ = η(0) − A`, where `T` transforms a pointwise physical product.
pub fn stationary_residual<T: Real>(
    eta_hat: &[Complex<T>],
    u_hat: &[Complex<T>],
    froude: T,
    amplitude: T,
    params: &PhysicalParams<T>,
    transform: &Transform<T>,
) -> Result<StationaryResidual<T>> {
    let grid = transform.grid();
    let n = grid.len();
    for len in [eta_hat.len(), u_hat.len()] {
        if len != n {
            return Err(Error::Length {
                expected: n,
                found: len,
            });
        }
    }
    let eta = transform.inverse_real(eta_hat).values;
    let u = transform.inverse_real(u_hat).values;
    let eta_u: Vec<T> = eta.iter().zip(&u).map(|(&a, &b)| a * b).collect();
    let u_sq: Vec<T> = u.iter().map(|&b| b * b).collect();
    let p1 = transform.forward_real(&eta_u);
    let p2 = transform.forward_real(&u_sq);

    let half = n / 2;
    let third_beta_f = params.beta / lit(3.0) * froude;
    let mut values = Vec::with_capacity(n + 3);
    let mut max_imaginary = T::zero();
    let mut push = |z: Complex<T>, values: &mut Vec<T>| {
        max_imaginary = max_imaginary.max(abs(z.im));
        values.push(z.re);
    };
    for j in 0..=half {
        let g1 = u_hat[j] + eta_hat[j] * froude + p1[j] * params.alpha;
        push(g1, &mut values);
    }
    let k = grid.wavenumbers();
    for j in 0..=half {
        // −(β/3)F(ik)² = +(β/3)F k²
        let g2 = eta_hat[j]
            + u_hat[j] * froude
            + p2[j] * (params.alpha * lit(0.5))
            + u_hat[j] * (third_beta_f * k[j] * k[j]);
        push(g2, &mut values);
    }
    values.push(eta[grid.center_index()] - amplitude);
    Ok(StationaryResidual {
        values,
        max_imaginary,
    })
}

struct ReducedSystem<'a, T: Real> {
    transform: &'a Transform<T>,
    params: PhysicalParams<T>,
    amplitude: T,
}

impl<'a, T: Real> ReducedSystem<'a, T> {
    fn n(&self) -> usize {
        self.transform.grid().len()
    }

    /// Expands the reduced unknowns into mirrored full spectra.
    fn expand(&self, z: &[T]) -> (Vec<Complex<T>>, Vec<Complex<T>>, T) {
        let n = self.n();
        let half = n / 2;
        let mirror = |block: &[T]| {
            (0..n)
                .map(|j| {
                    let r = if j <= half { j } else { n - j };
                    Complex::new(block[r], T::zero())
                })
                .collect::<Vec<_>>()
        };
        (mirror(&z[..=half]), mirror(&z[half + 1..n + 2]), z[n + 2])
    }

    fn reduce(&self, eta: &[T], u: &[T], froude: T) -> Vec<T> {
        let half = self.n() / 2;
        let eta_hat = self.transform.forward_real(eta);
        let u_hat = self.transform.forward_real(u);
        eta_hat[..=half]
            .iter()
            .chain(&u_hat[..=half])
            .map(|c| c.re)
            .chain(std::iter::once(froude))
            .collect()
    }

    fn residual(&self, z: &[T]) -> Result<StationaryResidual<T>> {
        let (eta_hat, u_hat, froude) = self.expand(z);
        stationary_residual(
            &eta_hat,
            &u_hat,
            froude,
            self.amplitude,
            &self.params,
            self.transform,
        )
    }

    /// Forward-difference Jacobian; column `j` perturbs reduced unknown `j`,
    /// which moves both mirrored coefficients of the full spectrum.
    fn jacobian(&self, z: &[T], base: &[T], step: T) -> Result<DenseMatrix<T>> {
        let dim = z.len();
        let mut jac = DenseMatrix::zeros(dim);
        let mut shifted = z.to_vec();
        let mut column = vec![T::zero(); dim];
        for col in 0..dim {
            shifted[col] = z[col] + step;
            let g = self.residual(&shifted)?;
            shifted[col] = z[col];
            for ((c, &a), &b) in column.iter_mut().zip(&g.values).zip(base) {
                *c = (a - b) / step;
            }
            jac.set_column(col, &column);
        }
        Ok(jac)
    }

    fn physical(&self, z: &[T]) -> (Vec<T>, Vec<T>, T) {
        let (eta_hat, u_hat, froude) = self.expand(z);
        (
            self.transform.inverse_real(&eta_hat).values,
            self.transform.inverse_real(&u_hat).values,
            froude,
        )
    }
}

fn symmetry_defect<T: Real>(field: &[T]) -> T {
    let n = field.len();
    (1..n).fold(T::zero(), |acc, j| acc.max(abs(field[j] - field[n - j])))
}

/// Newton iteration on the reduced even system with amplitude pinning.
pub fn newton_solve<T: Real>(
    guess: &StationaryGuess<T>,
    amplitude: T,
    params: &PhysicalParams<T>,
    grid: Arc<Grid<T>>,
    options: &NewtonOptions<T>,
) -> Result<StationarySolution<T>> {
    params.validate()?;
    let n = grid.len();
    for len in [guess.eta.len(), guess.u.len()] {
        if len != n {
            return Err(Error::Length {
                expected: n,
                found: len,
            });
        }
    }
    if !(options.fd_step > T::zero()) {
        return Err(Error::InvalidParameter("fd_step must be positive".into()));
    }
    let tolerance = lit::<T>(1e-10).max(T::tiny());
    let guess_defect = symmetry_defect(&guess.eta).max(symmetry_defect(&guess.u));
    if guess_defect > tolerance * (T::one() + crate::scalar::max_abs(&guess.eta)) {
        return Err(Error::InvalidParameter(format!(
            "initial guess is not even about x = 0 (defect {guess_defect:e})"
        )));
    }

    let transform = Transform::new(grid.clone());
    let system = ReducedSystem {
        transform: &transform,
        params: *params,
        amplitude,
    };
    let mut z = system.reduce(&guess.eta, &guess.u, guess.froude);
    let mut history = Vec::new();
    let mut max_imaginary = T::zero();
    let mut defect = T::zero();

    for iteration in 0..=options.max_iter {
        let g = system.residual(&z)?;
        let r = g.mean_abs();
        history.push(r);
        max_imaginary = max_imaginary.max(g.max_imaginary);
        let (eta, u, froude) = system.physical(&z);
        defect = defect.max(symmetry_defect(&eta)).max(symmetry_defect(&u));
        debug_assert!(defect <= tolerance * (T::one() + crate::scalar::max_abs(&eta)));

        if !r.is_finite() {
            return Err(Error::NonConvergence {
                iterations: iteration,
                residual: f64::NAN,
            });
        }
        if r < options.tol {
            log::debug!("newton converged after {iteration} iterations, residual {r:e}");
            return Ok(StationarySolution {
                grid,
                eta,
                u,
                froude,
                amplitude,
                residual: r,
                iterations: iteration,
                residual_history: history,
                max_imaginary,
                symmetry_defect: defect,
            });
        }
        if iteration == options.max_iter {
            return Err(Error::NonConvergence {
                iterations: iteration,
                residual: r.to_f64().unwrap_or(f64::NAN),
            });
        }
        log::debug!("newton iteration {iteration}: residual {r:e}");

        let jac = system.jacobian(&z, &g.values, options.fd_step)?;
        let rhs: Vec<T> = g.values.iter().map(|&v| -v).collect();
        let step = jac.solve(&rhs)?;
        for (zi, si) in z.iter_mut().zip(&step) {
            *zi = *zi + *si;
        }
    }
    unreachable!("loop returns on the final iteration")
}

/// Solves from the KdV guess with the given amplitude.
pub fn solve_solitary_wave<T: Real>(
    amplitude: T,
    params: &PhysicalParams<T>,
    grid: Arc<Grid<T>>,
    options: &NewtonOptions<T>,
) -> Result<StationarySolution<T>> {
    let guess = kdv_initial_guess(amplitude, params, &grid)?;
    newton_solve(&guess, amplitude, params, grid, options)
}

impl<T: Real> StationarySolution<T> {
    pub fn as_guess(&self) -> StationaryGuess<T> {
        StationaryGuess {
            eta: self.eta.clone(),
            u: self.u.clone(),
            froude: self.froude,
        }
    }

    /// Spectra of the solution, for use as time-stepping initial data.
    pub fn spectra(&self) -> (Vec<Complex<T>>, Vec<Complex<T>>) {
        let t = Transform::new(self.grid.clone());
        (t.forward_real(&self.eta), t.forward_real(&self.u))
    }
}

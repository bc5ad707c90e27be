//! Time integration of the moving-frame Boussinesq system with sponge layer.
//!
//! The state is carried in Fourier space and advanced with classical RK4;
//! nonlinear products are formed pointwise in physical space without
//! dealiasing unless [`EvolutionConfig::dealias`] is set.

use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::params::PhysicalParams;
use crate::scalar::{abs, count, lit, max_abs, Real};
use crate::spectral::{apply_mask, Grid, Transform};
use crate::sponge::SpongeProfile;

/// `|η|` above this aborts the integration.
pub const BLOW_UP_THRESHOLD: f64 = 1e3;
/// Forcing must fall below this at the domain boundary.
pub const BOUNDARY_DECAY: f64 = 1e-12;

/// Bottom topography `h(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Topography<T> {
    None,
    /// `a0·(e^{−(x+b0)²} + e^{−(x−b0)²})`
    GaussianPair {
        a0: T,
        b0: T,
    },
    /// `scale·e^{−x²}/√π`
    Gaussian {
        scale: T,
    },
}

impl<T: Real> Topography<T> {
    pub fn eval(&self, x: T) -> T {
        match *self {
            Topography::None => T::zero(),
            Topography::GaussianPair { a0, b0 } => {
                a0 * ((-(x + b0) * (x + b0)).exp() + (-(x - b0) * (x - b0)).exp())
            }
            Topography::Gaussian { scale } => scale * (-x * x).exp() / T::PI().sqrt(),
        }
    }
}

/// Samples `h` on the grid, rejecting profiles that do not vanish at the boundary.
pub fn make_topography<T: Real>(kind: &Topography<T>, grid: &Grid<T>) -> Result<Vec<T>> {
    let samples: Vec<T> = grid.points().iter().map(|&x| kind.eval(x)).collect();
    check_boundary_decay("topography", &samples)?;
    Ok(samples)
}

fn check_boundary_decay<T: Real>(name: &str, samples: &[T]) -> Result<()> {
    let n = samples.len();
    let edge = abs(samples[0]).max(abs(samples[n - 1]));
    if !(edge < lit(BOUNDARY_DECAY)) {
        return Err(Error::Config(format!(
            "{name} does not decay at the domain boundary (|value| = {edge:e})"
        )));
    }
    Ok(())
}

/// Topography and surface pressure sampled on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Forcing<T> {
    pub topography: Vec<T>,
    pub pressure: Vec<T>,
}

impl<T: Real> Forcing<T> {
    pub fn none(grid: &Grid<T>) -> Self {
        Self {
            topography: vec![T::zero(); grid.len()],
            pressure: vec![T::zero(); grid.len()],
        }
    }

    pub fn new(topography: &Topography<T>, grid: &Grid<T>) -> Result<Self> {
        Ok(Self {
            topography: make_topography(topography, grid)?,
            pressure: vec![T::zero(); grid.len()],
        })
    }

    pub fn with_pressure(mut self, pressure: Vec<T>) -> Result<Self> {
        if pressure.len() != self.topography.len() {
            return Err(Error::Length {
                expected: self.topography.len(),
                found: pressure.len(),
            });
        }
        check_boundary_decay("pressure", &pressure)?;
        self.pressure = pressure;
        Ok(self)
    }

    fn validate(&self, grid: &Grid<T>) -> Result<()> {
        for len in [self.topography.len(), self.pressure.len()] {
            if len != grid.len() {
                return Err(Error::Length {
                    expected: grid.len(),
                    found: len,
                });
            }
        }
        check_boundary_decay("topography", &self.topography)?;
        check_boundary_decay("pressure", &self.pressure)
    }
}

/// Surface elevation and velocity at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveState<T> {
    pub eta: Vec<T>,
    pub u: Vec<T>,
    pub time: T,
    /// Largest imaginary magnitude dropped when the state was brought to physical space.
    pub discarded_imaginary: T,
}

impl<T: Real> WaveState<T> {
    pub fn new(eta: Vec<T>, u: Vec<T>, time: T) -> Self {
        Self {
            eta,
            u,
            time,
            discarded_imaginary: T::zero(),
        }
    }

    pub fn zero(grid: &Grid<T>) -> Self {
        Self::new(
            vec![T::zero(); grid.len()],
            vec![T::zero(); grid.len()],
            T::zero(),
        )
    }

    /// Energy proxy `Σ(η² + u²)·dx`.
    pub fn energy(&self, dx: T) -> T {
        self.eta
            .iter()
            .zip(&self.u)
            .fold(T::zero(), |acc, (&e, &v)| acc + e * e + v * v)
            * dx
    }

    /// Spatial mean of `η`.
    pub fn mean_eta(&self) -> T {
        self.eta.iter().fold(T::zero(), |acc, &v| acc + v) / count(self.eta.len())
    }
}

/// Everything needed to run one evolution.
#[derive(Debug, Clone)]
pub struct EvolutionConfig<T: Real> {
    /// `params.froude` is the frame speed.
    pub params: PhysicalParams<T>,
    pub grid: Arc<Grid<T>>,
    pub dt: T,
    pub t_final: T,
    pub snapshot_interval: T,
    pub sponge: Option<SpongeProfile<T>>,
    pub forcing: Forcing<T>,
    pub initial: WaveState<T>,
    /// Apply the 2/3 rule to every nonlinear product.
    pub dealias: bool,
}

impl<T: Real> EvolutionConfig<T> {
    /// Unforced, sponge-free configuration starting from `initial`.
    pub fn new(
        params: PhysicalParams<T>,
        grid: Arc<Grid<T>>,
        dt: T,
        t_final: T,
        snapshot_interval: T,
        initial: WaveState<T>,
    ) -> Self {
        let forcing = Forcing::none(&grid);
        Self {
            params,
            grid,
            dt,
            t_final,
            snapshot_interval,
            sponge: None,
            forcing,
            initial,
            dealias: false,
        }
    }

    /// Steps per snapshot and number of snapshot intervals.
    pub fn schedule(&self) -> Result<(usize, usize)> {
        if !(self.dt > T::zero()) {
            return Err(Error::Config(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.snapshot_interval > T::zero()) || !(self.t_final > T::zero()) {
            return Err(Error::Config(
                "snapshot_interval and t_final must be positive".into(),
            ));
        }
        let steps = whole_multiple(self.snapshot_interval, self.dt)
            .ok_or_else(|| Error::Config("snapshot_interval must be a multiple of dt".into()))?;
        let snapshots = whole_multiple(self.t_final, self.snapshot_interval).ok_or_else(|| {
            Error::Config("t_final must be a multiple of snapshot_interval".into())
        })?;
        Ok((steps, snapshots))
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate_evolution()?;
        self.schedule()?;
        self.forcing.validate(&self.grid)?;
        for len in [self.initial.eta.len(), self.initial.u.len()] {
            if len != self.grid.len() {
                return Err(Error::Length {
                    expected: self.grid.len(),
                    found: len,
                });
            }
        }
        if let Some(s) = &self.sponge {
            if s.samples().len() != self.grid.len() {
                return Err(Error::Length {
                    expected: self.grid.len(),
                    found: s.samples().len(),
                });
            }
        }
        Ok(())
    }
}

fn whole_multiple<T: Real>(value: T, unit: T) -> Option<usize> {
    let ratio = value / unit;
    let rounded = ratio.round();
    if rounded < T::one() || abs(ratio - rounded) > lit::<T>(1e-9) * rounded {
        return None;
    }
    rounded.to_usize()
}

/// Spectral state `(η̃, ũ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralState<T> {
    pub eta_hat: Vec<Complex<T>>,
    pub u_hat: Vec<Complex<T>>,
}

impl<T: Real> SpectralState<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            eta_hat: vec![Complex::zero(); n],
            u_hat: vec![Complex::zero(); n],
        }
    }

    fn is_finite(&self) -> bool {
        self.eta_hat
            .iter()
            .chain(&self.u_hat)
            .fold(T::zero(), |acc, c| acc + c.re + c.im)
            .is_finite()
    }
}

/// Right-hand side of the Fourier-space system.
///
/// ```text
/// dη̃/dt = −ikFη̃ − ikũ + ikα·T(hu) − ikα·T(ηu) + 2·T(sη) + ikFh̃
/// dũ/dt = [−ikFũ − ikη̃ − (α/2)ik·T(u²) + (β/3)F(ik)³ũ + T(s²η)/(ik)
///          − (β/2)F²(ik)³h̃ − αikP̃] / (1 − (β/3)(ik)²)
/// ```
/// `T(s²η)/(ik)` is zero at the mean and Nyquist slots.
pub struct BoussinesqRhs<T: Real> {
    transform: Transform<T>,
    topography: Vec<T>,
    sponge: Option<Vec<T>>,
    dealias: Option<Vec<bool>>,
    // per-mode multipliers
    eta_from_eta: Vec<Complex<T>>,
    eta_from_u: Vec<Complex<T>>,
    eta_from_flux: Vec<Complex<T>>,
    u_from_eta: Vec<Complex<T>>,
    u_from_u: Vec<Complex<T>>,
    u_from_u_sq: Vec<Complex<T>>,
    u_from_sponge: Vec<Complex<T>>,
    eta_forcing: Vec<Complex<T>>,
    u_forcing: Vec<Complex<T>>,
    work: Work<T>,
}

struct Work<T> {
    eta: Vec<T>,
    u: Vec<T>,
    a: Vec<T>,
    b: Vec<T>,
    a_hat: Vec<Complex<T>>,
    b_hat: Vec<Complex<T>>,
    buf: Vec<Complex<T>>,
    scratch: Vec<Complex<T>>,
}

impl<T: Real> BoussinesqRhs<T> {
    pub fn new(
        params: &PhysicalParams<T>,
        grid: Arc<Grid<T>>,
        sponge: Option<&SpongeProfile<T>>,
        forcing: &Forcing<T>,
        dealias: bool,
    ) -> Self {
        let n = grid.len();
        let transform = Transform::new(grid.clone());
        let f = params.froude;
        let alpha = params.alpha;
        let beta = params.beta;
        let i = Complex::new(T::zero(), T::one());
        let h_hat = transform.forward_real(&forcing.topography);
        let p_hat = transform.forward_real(&forcing.pressure);

        let mut rhs = Self {
            eta_from_eta: Vec::with_capacity(n),
            eta_from_u: Vec::with_capacity(n),
            eta_from_flux: Vec::with_capacity(n),
            u_from_eta: Vec::with_capacity(n),
            u_from_u: Vec::with_capacity(n),
            u_from_u_sq: Vec::with_capacity(n),
            u_from_sponge: Vec::with_capacity(n),
            eta_forcing: Vec::with_capacity(n),
            u_forcing: Vec::with_capacity(n),
            topography: forcing.topography.clone(),
            sponge: sponge
                .filter(|s| !s.is_inactive())
                .map(|s| s.samples().to_vec()),
            dealias: dealias.then(|| grid.dealias_mask()),
            work: Work {
                eta: vec![T::zero(); n],
                u: vec![T::zero(); n],
                a: vec![T::zero(); n],
                b: vec![T::zero(); n],
                a_hat: vec![Complex::zero(); n],
                b_hat: vec![Complex::zero(); n],
                buf: vec![Complex::zero(); n],
                scratch: transform.make_scratch(),
            },
            transform,
        };
        let third = lit::<T>(1.0 / 3.0);
        let half = lit::<T>(0.5);
        for (j, &k) in grid.wavenumbers().iter().enumerate() {
            let ik = i * k;
            let ik3 = ik * ik * ik;
            // 1 − (β/3)(ik)² = 1 + (β/3)k²
            let inv_den = T::one() / (T::one() + beta * third * k * k);
            rhs.eta_from_eta.push(-ik * f);
            rhs.eta_from_u.push(-ik);
            rhs.eta_from_flux.push(-ik * alpha);
            rhs.u_from_eta.push(-ik * inv_den);
            rhs.u_from_u
                .push((-ik * f + ik3 * (beta * third * f)) * inv_den);
            rhs.u_from_u_sq.push(-ik * (alpha * half) * inv_den);
            rhs.u_from_sponge.push(if k == T::zero() {
                Complex::zero()
            } else {
                (ik * (T::one() + beta * third * k * k)).inv()
            });
            rhs.eta_forcing.push(ik * f * h_hat[j]);
            rhs.u_forcing
                .push((-ik3 * (beta * half * f * f) * h_hat[j] - ik * alpha * p_hat[j]) * inv_den);
        }
        rhs
    }

    pub fn grid(&self) -> &Arc<Grid<T>> {
        self.transform.grid()
    }

    pub fn transform(&self) -> &Transform<T> {
        &self.transform
    }

    /// Evaluates the right-hand side into `out`; `time` is only used for diagnostics.
    pub fn eval(
        &mut self,
        state: &SpectralState<T>,
        out: &mut SpectralState<T>,
        time: T,
    ) -> Result<()> {
        let w = &mut self.work;
        self.transform.inverse_pair(
            &state.eta_hat,
            &state.u_hat,
            &mut w.eta,
            &mut w.u,
            &mut w.buf,
            &mut w.scratch,
        );
        let peak = max_abs(&w.eta);
        if !(peak <= lit(BLOW_UP_THRESHOLD)) || !max_abs(&w.u).is_finite() {
            return Err(Error::BlowUp {
                time: time.to_f64().unwrap_or(f64::NAN),
                reason: format!("max |eta| = {peak:e}"),
            });
        }

        // (η − h)u and u²
        for j in 0..w.eta.len() {
            w.a[j] = (w.eta[j] - self.topography[j]) * w.u[j];
            w.b[j] = w.u[j] * w.u[j];
        }
        self.transform.forward_pair(
            &w.a,
            &w.b,
            &mut w.a_hat,
            &mut w.b_hat,
            &mut w.buf,
            &mut w.scratch,
        );
        if let Some(mask) = &self.dealias {
            apply_mask(&mut w.a_hat, mask);
            apply_mask(&mut w.b_hat, mask);
        }
        let two = lit::<T>(2.0);
        for j in 0..w.eta.len() {
            let e = state.eta_hat[j];
            let v = state.u_hat[j];
            out.eta_hat[j] = self.eta_from_eta[j] * e
                + self.eta_from_u[j] * v
                + self.eta_from_flux[j] * w.a_hat[j]
                + self.eta_forcing[j];
            out.u_hat[j] = self.u_from_eta[j] * e
                + self.u_from_u[j] * v
                + self.u_from_u_sq[j] * w.b_hat[j]
                + self.u_forcing[j];
        }

        if let Some(s) = &self.sponge {
            // sη and s²η
            for (((a, b), &sj), &e) in w.a.iter_mut().zip(w.b.iter_mut()).zip(s).zip(&w.eta) {
                *a = sj * e;
                *b = sj * *a;
            }
            self.transform.forward_pair(
                &w.a,
                &w.b,
                &mut w.a_hat,
                &mut w.b_hat,
                &mut w.buf,
                &mut w.scratch,
            );
            if let Some(mask) = &self.dealias {
                apply_mask(&mut w.a_hat, mask);
                apply_mask(&mut w.b_hat, mask);
            }
            for j in 0..w.eta.len() {
                out.eta_hat[j] = out.eta_hat[j] + w.a_hat[j] * two;
                out.u_hat[j] = out.u_hat[j] + self.u_from_sponge[j] * w.b_hat[j];
            }
        }
        Ok(())
    }
}

/// RK4 stage buffers.
pub struct Rk4<T> {
    k: [SpectralState<T>; 4],
    stage: SpectralState<T>,
}

impl<T: Real> Rk4<T> {
    pub fn new(n: usize) -> Self {
        Self {
            k: [
                SpectralState::zeros(n),
                SpectralState::zeros(n),
                SpectralState::zeros(n),
                SpectralState::zeros(n),
            ],
            stage: SpectralState::zeros(n),
        }
    }

    /// Advances `state` by one classical RK4 step.
    pub fn step(
        &mut self,
        rhs: &mut BoussinesqRhs<T>,
        state: &mut SpectralState<T>,
        time: T,
        dt: T,
    ) -> Result<()> {
        let half_dt = dt * lit(0.5);
        let [k1, k2, k3, k4] = &mut self.k;
        let stage = &mut self.stage;

        rhs.eval(state, k1, time)?;
        axpy(stage, state, k1, half_dt);
        rhs.eval(stage, k2, time + half_dt)?;
        axpy(stage, state, k2, half_dt);
        rhs.eval(stage, k3, time + half_dt)?;
        axpy(stage, state, k3, dt);
        rhs.eval(stage, k4, time + dt)?;

        let sixth = dt / lit(6.0);
        let two = lit::<T>(2.0);
        for j in 0..state.eta_hat.len() {
            state.eta_hat[j] = state.eta_hat[j]
                + (k1.eta_hat[j] + (k2.eta_hat[j] + k3.eta_hat[j]) * two + k4.eta_hat[j]) * sixth;
            state.u_hat[j] = state.u_hat[j]
                + (k1.u_hat[j] + (k2.u_hat[j] + k3.u_hat[j]) * two + k4.u_hat[j]) * sixth;
        }
        if !state.is_finite() {
            return Err(Error::BlowUp {
                time: (time + dt).to_f64().unwrap_or(f64::NAN),
                reason: "non-finite spectral coefficient".into(),
            });
        }
        Ok(())
    }
}

fn axpy<T: Real>(out: &mut SpectralState<T>, y: &SpectralState<T>, k: &SpectralState<T>, h: T) {
    for j in 0..y.eta_hat.len() {
        out.eta_hat[j] = y.eta_hat[j] + k.eta_hat[j] * h;
        out.u_hat[j] = y.u_hat[j] + k.u_hat[j] * h;
    }
}

/// One RK4 step from `state`, allocating its own stage buffers.
pub fn rk4_step<T: Real>(
    state: &SpectralState<T>,
    dt: T,
    rhs: &mut BoussinesqRhs<T>,
) -> Result<SpectralState<T>> {
    if !(dt > T::zero()) {
        return Err(Error::Config(format!("dt must be positive, got {dt}")));
    }
    let mut next = state.clone();
    Rk4::new(state.eta_hat.len()).step(rhs, &mut next, T::zero(), dt)?;
    Ok(next)
}

/// Stateful integrator for one configuration.
pub struct Integrator<T: Real> {
    rhs: BoussinesqRhs<T>,
    rk4: Rk4<T>,
    state: SpectralState<T>,
    dt: T,
    steps_taken: u64,
    steps_per_snapshot: usize,
    snapshots: usize,
    t0: T,
    initial: WaveState<T>,
}

impl<T: Real> Integrator<T> {
    pub fn new(config: &EvolutionConfig<T>) -> Result<Self> {
        config.validate()?;
        let (steps_per_snapshot, snapshots) = config.schedule()?;
        let rhs = BoussinesqRhs::new(
            &config.params,
            config.grid.clone(),
            config.sponge.as_ref(),
            &config.forcing,
            config.dealias,
        );
        let state = SpectralState {
            eta_hat: rhs.transform.forward_real(&config.initial.eta),
            u_hat: rhs.transform.forward_real(&config.initial.u),
        };
        Ok(Self {
            rk4: Rk4::new(config.grid.len()),
            rhs,
            state,
            dt: config.dt,
            steps_taken: 0,
            steps_per_snapshot,
            snapshots,
            t0: config.initial.time,
            initial: config.initial.clone(),
        })
    }

    pub fn time(&self) -> T {
        self.t0 + self.dt * lit(self.steps_taken as f64)
    }

    pub fn spectral_state(&self) -> &SpectralState<T> {
        &self.state
    }

    pub fn step(&mut self) -> Result<()> {
        let t = self.time();
        self.rk4.step(&mut self.rhs, &mut self.state, t, self.dt)?;
        self.steps_taken += 1;
        Ok(())
    }

    pub fn advance(&mut self, steps: usize) -> Result<()> {
        for _ in 0..steps {
            self.step()?;
        }
        Ok(())
    }

    /// Current state in physical space.
    pub fn snapshot(&self) -> WaveState<T> {
        let eta = self.rhs.transform.inverse_real(&self.state.eta_hat);
        let u = self.rhs.transform.inverse_real(&self.state.u_hat);
        WaveState {
            eta: eta.values,
            u: u.values,
            time: self.time(),
            discarded_imaginary: eta.discarded_imaginary.max(u.discarded_imaginary),
        }
    }

    /// Runs the full schedule, handing each snapshot (including `t = 0`) to `sink`.
    /// The first snapshot is the initial data itself, untouched by transforms,
    /// unless steps were already taken.
    pub fn run(&mut self, mut sink: impl FnMut(WaveState<T>) -> Result<()>) -> Result<()> {
        if self.steps_taken == 0 {
            sink(self.initial.clone())?;
        } else {
            sink(self.snapshot())?;
        }
        for _ in 0..self.snapshots {
            self.advance(self.steps_per_snapshot)?;
            sink(self.snapshot())?;
        }
        Ok(())
    }
}

/// Integrates `config` and collects every snapshot, starting with `t = 0`.
pub fn evolve<T: Real>(config: &EvolutionConfig<T>) -> Result<Vec<WaveState<T>>> {
    let mut out = Vec::new();
    evolve_with(config, |s| {
        out.push(s);
        Ok(())
    })?;
    Ok(out)
}

/// Streams snapshots to `sink` instead of collecting them.
pub fn evolve_with<T: Real>(
    config: &EvolutionConfig<T>,
    sink: impl FnMut(WaveState<T>) -> Result<()>,
) -> Result<()> {
    Integrator::new(config)?.run(sink)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize, dx: f64) -> Arc<Grid<f64>> {
        Arc::new(Grid::new(n, dx).unwrap())
    }

    #[test]
    fn topography_shapes() {
        let g = grid(1 << 10, 0.2);
        let pair = make_topography(&Topography::GaussianPair { a0: 1e-4, b0: 20.0 }, &g).unwrap();
        let at = |x: f64| pair[g.index_of(x, 1e-9).unwrap()];
        assert!((at(20.0) - 1e-4).abs() < 1e-12);
        assert!((at(-20.0) - 1e-4).abs() < 1e-12);
        assert!(at(0.0) < 1e-100);
        let bump = make_topography(&Topography::Gaussian { scale: 0.01 }, &g).unwrap();
        assert!((bump[g.center_index()] - 0.005_641_895_835_477_563).abs() < 1e-15);
        let flat = make_topography(&Topography::None, &g).unwrap();
        assert!(flat.iter().all(|&h| h == 0.0));
    }

    #[test]
    fn topography_must_decay() {
        let g = grid(64, 0.2);
        let wide = Topography::GaussianPair { a0: 1.0, b0: 6.0 };
        assert!(matches!(make_topography(&wide, &g), Err(Error::Config(_))));
        let f = Forcing::none(&g).with_pressure(vec![1.0; 64]);
        assert!(f.is_err());
    }

    #[test]
    fn schedule_validation() {
        let g = grid(32, 0.5);
        let p = PhysicalParams::reference();
        let mut c = EvolutionConfig::new(p, g.clone(), 0.01, 1.0, 0.1, WaveState::zero(&g));
        assert_eq!(c.schedule().unwrap(), (10, 10));
        c.snapshot_interval = 0.015;
        assert!(c.schedule().is_err());
        c.snapshot_interval = 0.3;
        assert!(c.schedule().is_err());
        c.snapshot_interval = 0.1;
        c.dt = -0.01;
        assert!(c.schedule().is_err());
    }

    #[test]
    fn zero_state_stays_zero() {
        let g = grid(64, 0.5);
        let p = PhysicalParams::reference().with_froude(-1.0);
        let mut rhs = BoussinesqRhs::new(&p, g.clone(), None, &Forcing::none(&g), false);
        let zero = SpectralState::zeros(64);
        let mut out = SpectralState::zeros(64);
        rhs.eval(&zero, &mut out, 0.0).unwrap();
        assert!(out
            .eta_hat
            .iter()
            .chain(&out.u_hat)
            .all(|c| c.norm() == 0.0));
        let next = rk4_step(&zero, 0.01, &mut rhs).unwrap();
        assert_eq!(next, zero);
        assert!(rk4_step(&zero, 0.0, &mut rhs).is_err());
    }

    #[test]
    fn zero_trajectory() {
        let g = grid(64, 0.5);
        let p = PhysicalParams::reference().with_froude(0.5);
        let c = EvolutionConfig::new(p, g.clone(), 0.01, 1.0, 0.25, WaveState::zero(&g));
        let snaps = evolve(&c).unwrap();
        assert_eq!(snaps.len(), 5);
        assert!((snaps[4].time - 1.0).abs() < 1e-12);
        for s in snaps {
            assert!(s.eta.iter().chain(&s.u).all(|&v| v == 0.0));
        }
    }

    #[test]
    fn blow_up_is_reported_with_time() {
        let g = grid(64, 0.5);
        let p = PhysicalParams::reference();
        let mut init = WaveState::zero(&g);
        init.eta[10] = 2e3;
        let c = EvolutionConfig::new(p, g.clone(), 0.01, 1.0, 0.5, init);
        match evolve(&c) {
            Err(Error::BlowUp { time, .. }) => assert_eq!(time, 0.0),
            other => panic!("expected blow-up, got {other:?}"),
        }
    }
}

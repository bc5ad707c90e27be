//! Paired sponge / no-sponge runs and their diagnostics.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;
use std::thread;

use crate::config::{FroudeMode, InitialKind, Scenario, ScenarioConfig, TopographyKind};
use crate::diagnostics::{
    amplitude_series, boundary_activity, inflow_activity, local_extrema, peak_in, relative_error,
    AmplitudeSeries, ErrorSeries,
};
use crate::error::{Error, Result};
use crate::evolution::{evolve_with, EvolutionConfig, Forcing, Topography, WaveState};
use crate::params::PhysicalParams;
use crate::snapshot::{snapshot_file_name, Snapshot, SnapshotHeader};
use crate::spectral::Grid;
use crate::sponge::SpongeProfile;
use crate::stationary::{solve_solitary_wave, NewtonOptions, StationarySolution};

/// Far-field level below which initial data may be zero-padded or truncated.
/// Stationary waves on a periodic grid settle to a small nonzero constant
/// (about 5e-11 at the reference parameters), hence not machine zero.
const EMBED_TOL: f64 = 1e-9;
/// Imaginary residue allowed at snapshot conversion.
const REALITY_TOL: f64 = 1e-10;

/// One evolution of a pair.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub grid: Arc<Grid<f64>>,
    /// Profile applied during the run (`None` for the no-sponge run).
    pub sponge: Option<SpongeProfile<f64>>,
    /// Profile defining the boundary region for activity measurements.
    pub boundary_region: SpongeProfile<f64>,
    pub snapshots: Vec<Snapshot>,
    pub amplitude: AmplitudeSeries,
    /// Location of `max |η|` over the whole domain.
    pub peak_location: Vec<f64>,
    pub boundary: Vec<f64>,
    /// Boundary activity on the left (inflow) side only.
    pub inflow: Vec<f64>,
}

/// A named pass/fail scenario assertion.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct ScenarioResult {
    pub config: ScenarioConfig,
    pub froude: f64,
    pub stationary: Option<StationarySolution<f64>>,
    pub sponge: RunOutput,
    pub nosponge: RunOutput,
    pub errors: ErrorSeries,
    pub checks: Vec<Check>,
}

impl ScenarioResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct InitialData {
    x: Vec<f64>,
    eta: Vec<f64>,
    u: Vec<f64>,
    froude: Option<f64>,
    stationary: Option<StationarySolution<f64>>,
}

fn initial_data(cfg: &ScenarioConfig, grid: &Arc<Grid<f64>>) -> Result<InitialData> {
    match &cfg.initial {
        InitialKind::Zero => Ok(InitialData {
            x: grid.points().to_vec(),
            eta: vec![0.0; grid.len()],
            u: vec![0.0; grid.len()],
            froude: None,
            stationary: None,
        }),
        InitialKind::Stationary => {
            let params = PhysicalParams::new(cfg.alpha, cfg.beta, cfg.epsilon, 0.0)?;
            let options = NewtonOptions {
                tol: cfg.newton_tol,
                max_iter: cfg.newton_max_iter,
                ..NewtonOptions::default()
            };
            let sol = solve_solitary_wave(cfg.amplitude, &params, grid.clone(), &options)?;
            log::info!(
                "stationary wave: F0 = {:.12}, residual {:.3e} after {} iterations",
                sol.froude,
                sol.residual,
                sol.iterations
            );
            Ok(InitialData {
                x: grid.points().to_vec(),
                eta: sol.eta.clone(),
                u: sol.u.clone(),
                froude: Some(sol.froude),
                stationary: Some(sol),
            })
        }
        InitialKind::File(path) => {
            let snap = Snapshot::read(path)?;
            if (snap.header.dx - cfg.dx).abs() > 1e-12 * cfg.dx {
                return Err(Error::GridMismatch(format!(
                    "{} has dx = {}, scenario uses {}",
                    path.display(),
                    snap.header.dx,
                    cfg.dx
                )));
            }
            Ok(InitialData {
                froude: Some(snap.header.froude),
                x: snap.x,
                eta: snap.eta,
                u: snap.u,
                stationary: None,
            })
        }
    }
}

/// Transfers samples onto `grid` by x-coordinate, zero where the source has no point.
pub fn embed(x: &[f64], values: &[f64], grid: &Grid<f64>) -> Result<Vec<f64>> {
    let dx = grid.dx();
    let origin = grid.points()[0];
    let mut out = vec![0.0; grid.len()];
    let mut covered = 0;
    for (&xs, &v) in x.iter().zip(values) {
        let pos = ((xs - origin) / dx).round();
        let slot = (pos >= 0.0 && (pos as usize) < grid.len())
            .then_some(pos as usize)
            .filter(|&i| (grid.points()[i] - xs).abs() <= 1e-9 * dx);
        match slot {
            Some(i) => {
                out[i] = v;
                covered += 1;
            }
            None if v.abs() > EMBED_TOL => {
                return Err(Error::GridMismatch(format!(
                    "initial data ({v:e} at x = {xs}) falls outside the target grid"
                )))
            }
            None => {}
        }
    }
    if covered < grid.len() {
        let edge = values
            .first()
            .map_or(0.0, |v| v.abs())
            .max(values.last().map_or(0.0, |v| v.abs()));
        if edge > EMBED_TOL {
            return Err(Error::GridMismatch(format!(
                "initial data does not decay at its boundary ({edge:e}) and cannot be padded"
            )));
        }
        if edge > 0.0 {
            log::debug!("zero-padding initial data with a {edge:e} step at the seam");
        }
    }
    Ok(out)
}

fn resolve_froude(cfg: &ScenarioConfig, f0: Option<f64>) -> Result<f64> {
    let need = || {
        f0.ok_or_else(|| {
            Error::Config("froude_mode needs a stationary or file initial state".into())
        })
    };
    Ok(match cfg.froude_mode {
        FroudeMode::Fixed => cfg.froude,
        FroudeMode::Stationary => need()?,
        FroudeMode::Offset => need()? - cfg.offset_c0 * cfg.epsilon,
    })
}

fn topography(cfg: &ScenarioConfig) -> Topography<f64> {
    match cfg.topography {
        TopographyKind::None => Topography::None,
        TopographyKind::GaussianPair => Topography::GaussianPair {
            a0: cfg.obstacle_height(),
            b0: cfg.b0,
        },
        TopographyKind::Gaussian => Topography::Gaussian {
            scale: cfg.gaussian_scale(),
        },
    }
}

struct RunPlan {
    grid: Arc<Grid<f64>>,
    evolution: EvolutionConfig<f64>,
    boundary_region: SpongeProfile<f64>,
}

fn plan_run(
    cfg: &ScenarioConfig,
    n: usize,
    with_sponge: bool,
    params: PhysicalParams<f64>,
    init: &InitialData,
) -> Result<RunPlan> {
    let grid = Arc::new(Grid::new(n, cfg.dx)?);
    let region = SpongeProfile::with_margin(cfg.sponge_a1, cfg.sponge_margin, &grid)?;
    if !region.contains_window(cfg.window.x_min, cfg.window.x_max) {
        return Err(Error::Config(format!(
            "comparison window ({}, {}) is not inside the sponge plateau {:?} of the n = {n} grid",
            cfg.window.x_min,
            cfg.window.x_max,
            region.edges()
        )));
    }
    let initial = WaveState::new(
        embed(&init.x, &init.eta, &grid)?,
        embed(&init.x, &init.u, &grid)?,
        0.0,
    );
    let mut evolution = EvolutionConfig::new(
        params,
        grid.clone(),
        cfg.dt,
        cfg.t_final,
        cfg.snapshot_interval,
        initial,
    );
    evolution.forcing = Forcing::new(&topography(cfg), &grid)?;
    evolution.sponge = with_sponge.then(|| region.clone());
    evolution.dealias = cfg.dealias;
    evolution.validate()?;
    Ok(RunPlan {
        grid,
        evolution,
        boundary_region: region,
    })
}

fn execute(plan: RunPlan, label: &str) -> Result<(RunPlan, Vec<Snapshot>)> {
    let p = plan.evolution.params;
    let header = SnapshotHeader {
        n: plan.grid.len(),
        dx: plan.grid.dx(),
        t: 0.0,
        alpha: p.alpha,
        beta: p.beta,
        froude: p.froude,
        sponge: plan.evolution.sponge.is_some(),
        stationary: None,
    };
    let mut snaps = Vec::new();
    evolve_with(&plan.evolution, |state| {
        if state.discarded_imaginary > REALITY_TOL {
            log::warn!(
                "{label}: imaginary residue {:e} at t = {}",
                state.discarded_imaginary,
                state.time
            );
        }
        log::debug!("{label}: t = {}", state.time);
        snaps.push(Snapshot::from_state(
            header.clone(),
            plan.grid.points(),
            &state,
        )?);
        Ok(())
    })?;
    log::info!("{label}: finished {} snapshots", snaps.len());
    Ok((plan, snaps))
}

fn summarize(plan: RunPlan, snapshots: Vec<Snapshot>, region: (f64, f64)) -> RunOutput {
    let amplitude = amplitude_series(&snapshots, region);
    let peak_location = snapshots
        .iter()
        .map(|s| peak_in(&s.x, &s.eta, f64::NEG_INFINITY, f64::INFINITY).1)
        .collect();
    let boundary = snapshots
        .iter()
        .map(|s| boundary_activity(&s.eta, &plan.boundary_region))
        .collect();
    let inflow = snapshots
        .iter()
        .map(|s| inflow_activity(&s.x, &s.eta, &plan.boundary_region))
        .collect();
    RunOutput {
        grid: plan.grid,
        sponge: plan.evolution.sponge,
        boundary_region: plan.boundary_region,
        snapshots,
        amplitude,
        peak_location,
        boundary,
        inflow,
    }
}

/// Runs one evolution on the `n_sponge` grid, with or without the sponge.
pub fn run_single(cfg: &ScenarioConfig, with_sponge: bool) -> Result<RunOutput> {
    cfg.validate()?;
    let grid = Arc::new(Grid::new(cfg.n_sponge, cfg.dx)?);
    let init = initial_data(cfg, &grid)?;
    let froude = resolve_froude(cfg, init.froude)?;
    let params = PhysicalParams::new(cfg.alpha, cfg.beta, cfg.epsilon, froude)?;
    let plan = plan_run(cfg, cfg.n_sponge, with_sponge, params, &init)?;
    let (plan, snaps) = execute(plan, if with_sponge { "sponge" } else { "nosponge" })?;
    Ok(summarize(plan, snaps, cfg.amplitude_region()))
}

/// Runs the sponge and no-sponge evolutions concurrently and compares them.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioResult> {
    cfg.validate()?;
    let base = Arc::new(Grid::new(cfg.n_sponge.min(cfg.n_nosponge), cfg.dx)?);
    let init = initial_data(cfg, &base)?;
    let froude = resolve_froude(cfg, init.froude)?;
    let params = PhysicalParams::new(cfg.alpha, cfg.beta, cfg.epsilon, froude)?;
    log::info!("scenario {}: F = {froude:.12}", cfg.scenario);

    let sponge_plan = plan_run(cfg, cfg.n_sponge, true, params, &init)?;
    let nosponge_plan = plan_run(cfg, cfg.n_nosponge, false, params, &init)?;
    let (sponge, nosponge) = thread::scope(|s| {
        let a = s.spawn(|| execute(sponge_plan, "sponge"));
        let b = s.spawn(|| execute(nosponge_plan, "nosponge"));
        (
            a.join().expect("sponge run panicked"),
            b.join().expect("no-sponge run panicked"),
        )
    });
    let (sponge_plan, sponge_snaps) = sponge?;
    let (nosponge_plan, nosponge_snaps) = nosponge?;

    let mut errors = ErrorSeries::default();
    for (c, s) in nosponge_snaps.iter().zip(&sponge_snaps) {
        errors.push(s.header.t, relative_error(c, s, &cfg.window)?);
    }
    let region = cfg.amplitude_region();
    let mut result = ScenarioResult {
        config: cfg.clone(),
        froude,
        stationary: init.stationary,
        sponge: summarize(sponge_plan, sponge_snaps, region),
        nosponge: summarize(nosponge_plan, nosponge_snaps, region),
        errors,
        checks: Vec::new(),
    };
    result.checks = scenario_checks(&result);
    Ok(result)
}

/// Largest `|η(T) − η(0)|` of a run.
pub fn profile_drift(run: &RunOutput) -> f64 {
    match (run.snapshots.first(), run.snapshots.last()) {
        (Some(a), Some(b)) => a
            .eta
            .iter()
            .zip(&b.eta)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max),
        _ => 0.0,
    }
}

/// Time for a disturbance at the origin to reach the plateau edge at the
/// fastest linear characteristic speed `|F| + 1`.
pub fn transit_time(cfg: &ScenarioConfig, froude: f64, grid: &Grid<f64>) -> f64 {
    (grid.half_length() - cfg.sponge_margin) / (froude.abs() + 1.0)
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check {
        name,
        passed,
        detail,
    }
}

fn scenario_checks(r: &ScenarioResult) -> Vec<Check> {
    let cfg = &r.config;
    let mut checks = vec![check(
        "initial_error_zero",
        r.errors.values.first() == Some(&0.0),
        format!(
            "E(0) = {:e}",
            r.errors.values.first().copied().unwrap_or(f64::NAN)
        ),
    )];
    match cfg.scenario {
        Scenario::TravelingWave => {
            let max_e = r.errors.max();
            checks.push(check(
                "relative_error_below_1e-9",
                max_e < 1e-9,
                format!("max E = {max_e:e}"),
            ));
            let drift = profile_drift(&r.sponge);
            checks.push(check(
                "profile_drift_below_1e-9",
                drift < 1e-9,
                format!("max |eta(T) - eta(0)| = {drift:e}"),
            ));
            let dev = r
                .sponge
                .amplitude
                .values
                .iter()
                .map(|a| (a - cfg.amplitude).abs())
                .fold(0.0, f64::max);
            checks.push(check(
                "amplitude_constant",
                dev < 1e-6,
                format!("max |amax - A| = {dev:e}"),
            ));
        }
        Scenario::TrappedWaves => {
            let (lo, hi) = (-cfg.b0, cfg.b0);
            let outside = r
                .sponge
                .peak_location
                .iter()
                .zip(&r.sponge.amplitude.times)
                .find(|(x, _)| !(lo <= **x && **x <= hi));
            checks.push(check(
                "confinement",
                outside.is_none(),
                match outside {
                    Some((x, t)) => format!("peak left [{lo}, {hi}] at t = {t} (x = {x})"),
                    None => format!("peak stayed within [{lo}, {hi}]"),
                },
            ));
            let a = &r.sponge.amplitude.values;
            let (maxima, minima) = local_extrema(a);
            let spread = a.iter().copied().fold(f64::MIN, f64::max)
                - a.iter().copied().fold(f64::MAX, f64::min);
            checks.push(check(
                "amplitude_rise_and_fall",
                maxima >= 1 && minima >= 1 && spread > 1e-8,
                format!("{maxima} local maxima, {minima} local minima, spread {spread:e}"),
            ));
        }
        Scenario::CurrentTopography => {
            let sponge_max = r.sponge.boundary.iter().copied().fold(0.0, f64::max);
            checks.push(check(
                "sponge_absorbs",
                sponge_max < 1e-4,
                format!("max boundary activity with sponge = {sponge_max:e}"),
            ));
            let transit = transit_time(cfg, r.froude, &r.nosponge.grid);
            let late = r
                .nosponge
                .inflow
                .iter()
                .zip(&r.nosponge.amplitude.times)
                .filter(|(_, t)| **t > transit)
                .map(|(a, _)| *a)
                .fold(0.0, f64::max);
            checks.push(check(
                "nosponge_reentry",
                late > 1e-5,
                format!("max inflow-side activity without sponge after t = {transit:.1}: {late:e}"),
            ));
        }
        Scenario::Custom => {}
    }
    checks
}

fn write_series(path: &Path, header: &str, t: &[f64], v: &[f64]) -> Result<()> {
    let mut out = format!("{header}\n");
    for (t, v) in t.iter().zip(v) {
        let _ = writeln!(out, "{t:.16e},{v:.16e}");
    }
    fs::write(path, out)?;
    Ok(())
}

/// Writes snapshots plus `amplitude.csv` and `boundary.csv` for one run.
pub fn write_run(run: &RunOutput, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    for (i, s) in run.snapshots.iter().enumerate() {
        s.write(dir.join(snapshot_file_name(i)))?;
    }
    write_series(
        &dir.join("amplitude.csv"),
        "t,amax",
        &run.amplitude.times,
        &run.amplitude.values,
    )?;
    write_series(
        &dir.join("boundary.csv"),
        "t,activity",
        &run.amplitude.times,
        &run.boundary,
    )
}

/// Writes the full output tree of a scenario.
pub fn write_outputs(result: &ScenarioResult, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    write_run(&result.sponge, &dir.join("sponge"))?;
    write_run(&result.nosponge, &dir.join("nosponge"))?;
    write_series(
        &dir.join("errors.csv"),
        "t,E",
        &result.errors.times,
        &result.errors.values,
    )?;
    if let Some(sol) = &result.stationary {
        Snapshot::from_stationary(sol, result.config.alpha, result.config.beta)
            .write(dir.join("stationary.dat"))?;
    }
    fs::write(dir.join("config.txt"), result.config.to_string())?;
    fs::write(dir.join("report.txt"), report(result))?;
    Ok(())
}

pub fn report(r: &ScenarioResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "scenario: {}", r.config.scenario);
    let _ = writeln!(out, "froude: {:.16e}", r.froude);
    if let Some(sol) = &r.stationary {
        let _ = writeln!(
            out,
            "stationary: amplitude {} residual {:e} iterations {}",
            sol.amplitude, sol.residual, sol.iterations
        );
    }
    let _ = writeln!(
        out,
        "grids: sponge n = {}, no-sponge n = {}, dx = {}",
        r.sponge.grid.len(),
        r.nosponge.grid.len(),
        r.config.dx
    );
    let _ = writeln!(out, "snapshots: {}", r.errors.times.len());
    let _ = writeln!(out, "max relative error: {:e}", r.errors.max());
    for c in &r.checks {
        let _ = writeln!(
            out,
            "{} {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    let _ = writeln!(out, "overall: {}", if r.passed() { "PASS" } else { "FAIL" });
    out
}

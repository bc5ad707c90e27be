//! Scenario configuration: presets plus a flat `key = value` file format.
//!
//! ```text
//! # trapped waves between two bumps
//! scenario = trapped_waves
//! n_sponge = 1024
//! n_nosponge = 2048
//! t_final = 10000
//! window = -80, 80
//! ```
//! `scenario` selects the preset; every other key overrides one field.

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::diagnostics::ComparisonWindow;
use crate::error::{Error, Result};
use crate::sponge::{DEFAULT_INTENSITY, DEFAULT_MARGIN};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    TravelingWave,
    TrappedWaves,
    CurrentTopography,
    Custom,
}

/// How the frame speed is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FroudeMode {
    /// The stationary solution's `F₀`.
    Stationary,
    /// `F₀ − offset_c0·ε`.
    Offset,
    /// The configured `froude` value.
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopographyKind {
    None,
    GaussianPair,
    Gaussian,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InitialKind {
    Zero,
    /// Solitary wave from the Newton solver.
    Stationary,
    /// Snapshot file (a stationary solution or any evolution snapshot).
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub n_sponge: usize,
    pub n_nosponge: usize,
    pub dx: f64,
    pub dt: f64,
    pub t_final: f64,
    pub snapshot_interval: f64,
    pub alpha: f64,
    pub beta: f64,
    pub epsilon: f64,
    /// Solitary-wave amplitude `A` for stationary initial data.
    pub amplitude: f64,
    pub offset_c0: f64,
    pub froude_mode: FroudeMode,
    /// Used when `froude_mode = fixed`.
    pub froude: f64,
    pub sponge_a1: f64,
    /// Distance from each plateau edge to the domain boundary.
    pub sponge_margin: f64,
    pub topography: TopographyKind,
    /// Obstacle height; `ε²` when unset.
    pub a0: Option<f64>,
    pub b0: f64,
    /// Gaussian topography scale; `ε` when unset.
    pub topography_scale: Option<f64>,
    pub window: ComparisonWindow,
    pub initial: InitialKind,
    /// Region for the amplitude series; `[−b0, b0]` for trapped waves, the window otherwise.
    pub amplitude_region: Option<(f64, f64)>,
    pub dealias: bool,
    pub newton_tol: f64,
    pub newton_max_iter: usize,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self::preset(Scenario::TravelingWave)
    }
}

impl ScenarioConfig {
    pub fn preset(scenario: Scenario) -> Self {
        let base = Self {
            scenario,
            n_sponge: 1024,
            n_nosponge: 1024,
            dx: 0.2,
            dt: 0.01,
            t_final: 352.0,
            snapshot_interval: 8.8,
            alpha: 0.01,
            beta: 0.01,
            epsilon: 0.01,
            amplitude: 0.44,
            offset_c0: 0.04,
            froude_mode: FroudeMode::Stationary,
            froude: 0.0,
            sponge_a1: DEFAULT_INTENSITY,
            sponge_margin: DEFAULT_MARGIN,
            topography: TopographyKind::None,
            a0: None,
            b0: 20.0,
            topography_scale: None,
            window: ComparisonWindow::default(),
            initial: InitialKind::Stationary,
            amplitude_region: None,
            dealias: false,
            newton_tol: 1e-10,
            newton_max_iter: 100,
        };
        match scenario {
            Scenario::TravelingWave | Scenario::Custom => base,
            Scenario::TrappedWaves => Self {
                n_nosponge: 2048,
                t_final: 1e4,
                snapshot_interval: 100.0,
                froude_mode: FroudeMode::Offset,
                topography: TopographyKind::GaussianPair,
                ..base
            },
            Scenario::CurrentTopography => Self {
                n_sponge: 4096,
                n_nosponge: 4096,
                dx: 0.1,
                t_final: 2000.0,
                snapshot_interval: 20.0,
                froude_mode: FroudeMode::Fixed,
                froude: 1.0,
                topography: TopographyKind::Gaussian,
                initial: InitialKind::Zero,
                ..base
            },
        }
    }

    pub fn obstacle_height(&self) -> f64 {
        self.a0.unwrap_or(self.epsilon * self.epsilon)
    }

    pub fn gaussian_scale(&self) -> f64 {
        self.topography_scale.unwrap_or(self.epsilon)
    }

    pub fn amplitude_region(&self) -> (f64, f64) {
        self.amplitude_region.unwrap_or(match self.scenario {
            Scenario::TrappedWaves => (-self.b0, self.b0),
            _ => (self.window.x_min, self.window.x_max),
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut seen = HashSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: idx + 1,
                message: format!("expected `key = value`, got `{line}`"),
            })?;
            let key = key.trim();
            if !seen.insert(key.to_string()) {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("duplicate key `{key}`"),
                });
            }
            entries.push((idx + 1, key.to_string(), value.trim().to_string()));
        }
        let scenario = match entries.iter().find(|(_, k, _)| k == "scenario") {
            Some((line, _, v)) => parse_value(v, *line, "scenario")?,
            None => Scenario::Custom,
        };
        let mut cfg = Self::preset(scenario);
        for (line, key, value) in &entries {
            cfg.set(key, value, *line)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut cfg = Self::parse(&std::fs::read_to_string(path)?)?;
        // relative snapshot paths are resolved against the config file
        if let InitialKind::File(p) = &cfg.initial {
            if p.is_relative() {
                if let Some(dir) = path.parent() {
                    cfg.initial = InitialKind::File(dir.join(p));
                }
            }
        }
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str, line: usize) -> Result<()> {
        let v = value;
        match key {
            "scenario" => {}
            "n_sponge" => self.n_sponge = parse_value(v, line, key)?,
            "n_nosponge" => self.n_nosponge = parse_value(v, line, key)?,
            "dx" => self.dx = parse_value(v, line, key)?,
            "dt" => self.dt = parse_value(v, line, key)?,
            "t_final" => self.t_final = parse_value(v, line, key)?,
            "snapshot_interval" => self.snapshot_interval = parse_value(v, line, key)?,
            "alpha" => self.alpha = parse_value(v, line, key)?,
            "beta" => self.beta = parse_value(v, line, key)?,
            "epsilon" => self.epsilon = parse_value(v, line, key)?,
            "amplitude" => self.amplitude = parse_value(v, line, key)?,
            "offset_c0" => self.offset_c0 = parse_value(v, line, key)?,
            "froude_mode" => self.froude_mode = parse_value(v, line, key)?,
            "froude" => self.froude = parse_value(v, line, key)?,
            "sponge_a1" => self.sponge_a1 = parse_value(v, line, key)?,
            "sponge_margin" => self.sponge_margin = parse_value(v, line, key)?,
            "topography" => self.topography = parse_value(v, line, key)?,
            "a0" => self.a0 = Some(parse_value(v, line, key)?),
            "b0" => self.b0 = parse_value(v, line, key)?,
            "topography_scale" => self.topography_scale = Some(parse_value(v, line, key)?),
            "window" => {
                let (a, b) = parse_pair(v, line, key)?;
                self.window = ComparisonWindow::new(a, b).map_err(|e| Error::Parse {
                    line,
                    message: e.to_string(),
                })?;
            }
            "amplitude_region" => self.amplitude_region = Some(parse_pair(v, line, key)?),
            "initial" => self.initial = parse_value(v, line, key)?,
            "dealias" => self.dealias = parse_value(v, line, key)?,
            "newton_tol" => self.newton_tol = parse_value(v, line, key)?,
            "newton_max_iter" => self.newton_max_iter = parse_value(v, line, key)?,
            _ => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown key `{key}`"),
                })
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        for (name, n) in [("n_sponge", self.n_sponge), ("n_nosponge", self.n_nosponge)] {
            if n < 4 || !n.is_multiple_of(2) {
                return Err(Error::Config(format!(
                    "{name} must be even and at least 4, got {n}"
                )));
            }
        }
        let positive = [
            ("dx", self.dx),
            ("dt", self.dt),
            ("t_final", self.t_final),
            ("snapshot_interval", self.snapshot_interval),
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("epsilon", self.epsilon),
            ("newton_tol", self.newton_tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.sponge_a1 >= 0.0) || !(self.sponge_margin > 0.0) {
            return Err(Error::Config(
                "sponge_a1 must be >= 0 and sponge_margin > 0".into(),
            ));
        }
        if self.initial == InitialKind::Zero && self.froude_mode != FroudeMode::Fixed {
            return Err(Error::Config(
                "zero initial data has no stationary Froude number; use froude_mode = fixed".into(),
            ));
        }
        Ok(())
    }
}

/// Renders in the format accepted by [`ScenarioConfig::parse`].
impl fmt::Display for ScenarioConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario = {}", self.scenario)?;
        writeln!(f, "n_sponge = {}", self.n_sponge)?;
        writeln!(f, "n_nosponge = {}", self.n_nosponge)?;
        writeln!(f, "dx = {:?}", self.dx)?;
        writeln!(f, "dt = {:?}", self.dt)?;
        writeln!(f, "t_final = {:?}", self.t_final)?;
        writeln!(f, "snapshot_interval = {:?}", self.snapshot_interval)?;
        writeln!(f, "alpha = {:?}", self.alpha)?;
        writeln!(f, "beta = {:?}", self.beta)?;
        writeln!(f, "epsilon = {:?}", self.epsilon)?;
        writeln!(f, "amplitude = {:?}", self.amplitude)?;
        writeln!(f, "offset_c0 = {:?}", self.offset_c0)?;
        writeln!(f, "froude_mode = {}", self.froude_mode)?;
        writeln!(f, "froude = {:?}", self.froude)?;
        writeln!(f, "sponge_a1 = {:?}", self.sponge_a1)?;
        writeln!(f, "sponge_margin = {:?}", self.sponge_margin)?;
        writeln!(f, "topography = {}", self.topography)?;
        if let Some(a0) = self.a0 {
            writeln!(f, "a0 = {a0:?}")?;
        }
        writeln!(f, "b0 = {:?}", self.b0)?;
        if let Some(s) = self.topography_scale {
            writeln!(f, "topography_scale = {s:?}")?;
        }
        writeln!(
            f,
            "window = {:?}, {:?}",
            self.window.x_min, self.window.x_max
        )?;
        if let Some((a, b)) = self.amplitude_region {
            writeln!(f, "amplitude_region = {a:?}, {b:?}")?;
        }
        writeln!(f, "initial = {}", self.initial)?;
        writeln!(f, "dealias = {}", self.dealias)?;
        writeln!(f, "newton_tol = {:?}", self.newton_tol)?;
        writeln!(f, "newton_max_iter = {}", self.newton_max_iter)
    }
}

fn parse_value<V: FromStr>(value: &str, line: usize, key: &str) -> Result<V> {
    value.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid value `{value}` for `{key}`"),
    })
}

fn parse_pair(value: &str, line: usize, key: &str) -> Result<(f64, f64)> {
    let (a, b) = value.split_once(',').ok_or_else(|| Error::Parse {
        line,
        message: format!("`{key}` expects `lo, hi`"),
    })?;
    Ok((
        parse_value(a.trim(), line, key)?,
        parse_value(b.trim(), line, key)?,
    ))
}

macro_rules! keyword_enum {
    ($ty:ty { $($variant:path => $name:literal),+ $(,)? }) => {
        impl FromStr for $ty {
            type Err = ();
            fn from_str(s: &str) -> std::result::Result<Self, ()> {
                match s {
                    $($name => Ok($variant),)+
                    _ => Err(()),
                }
            }
        }
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($variant => $name,)+ })
            }
        }
    };
}

keyword_enum!(Scenario {
    Scenario::TravelingWave => "traveling_wave",
    Scenario::TrappedWaves => "trapped_waves",
    Scenario::CurrentTopography => "current_topography",
    Scenario::Custom => "custom",
});
keyword_enum!(FroudeMode {
    FroudeMode::Stationary => "stationary",
    FroudeMode::Offset => "offset",
    FroudeMode::Fixed => "fixed",
});
keyword_enum!(TopographyKind {
    TopographyKind::None => "none",
    TopographyKind::GaussianPair => "gaussian_pair",
    TopographyKind::Gaussian => "gaussian",
});

impl FromStr for InitialKind {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "zero" => Ok(Self::Zero),
            "stationary" => Ok(Self::Stationary),
            _ => match s.strip_prefix("file:") {
                Some(p) if !p.trim().is_empty() => Ok(Self::File(PathBuf::from(p.trim()))),
                _ => Err(()),
            },
        }
    }
}

impl fmt::Display for InitialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zero => f.write_str("zero"),
            Self::Stationary => f.write_str("stationary"),
            Self::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

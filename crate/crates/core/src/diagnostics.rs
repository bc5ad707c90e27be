//! Comparison diagnostics between paired sponge / no-sponge runs.

use crate::error::{Error, Result};
use crate::snapshot::Snapshot;
use crate::sponge::SpongeProfile;

/// Grid points of the two runs must agree to this tolerance.
pub const ALIGN_TOL: f64 = 1e-12;
/// Both norms below this count as identically zero.
pub const ZERO_NORM: f64 = 1e-14;

/// Open interval `(x_min, x_max)` on which the runs are compared.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonWindow {
    pub x_min: f64,
    pub x_max: f64,
}

impl Default for ComparisonWindow {
    fn default() -> Self {
        Self {
            x_min: -80.0,
            x_max: 80.0,
        }
    }
}

impl ComparisonWindow {
    pub fn new(x_min: f64, x_max: f64) -> Result<Self> {
        if !(x_min < x_max) {
            return Err(Error::Config(format!(
                "comparison window must satisfy x_min < x_max, got ({x_min}, {x_max})"
            )));
        }
        Ok(Self { x_min, x_max })
    }

    pub fn contains(&self, x: f64) -> bool {
        self.x_min < x && x < self.x_max
    }

    /// Splits at `x` into two disjoint open windows; a grid point at `x`
    /// falls in the second one.
    pub fn split(&self, x: f64) -> Option<(Self, Self)> {
        if !self.contains(x) {
            return None;
        }
        let below = x - 0.5 * ALIGN_TOL.max(f64::EPSILON * x.abs());
        Some((
            Self {
                x_min: self.x_min,
                x_max: x,
            },
            Self {
                x_min: below,
                x_max: self.x_max,
            },
        ))
    }
}

/// Relative error `E(t)` sampled at the snapshot times.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ErrorSeries {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl ErrorSeries {
    pub fn push(&mut self, t: f64, e: f64) {
        self.times.push(t);
        self.values.push(e);
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

/// Squared Euclidean norms over the window-restricted samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowNorms {
    /// `Σ(η_c − η_s)²`
    pub diff_sq: f64,
    /// `Σ η_s²`
    pub reference_sq: f64,
    pub points: usize,
}

impl WindowNorms {
    /// Combines disjoint windows.
    pub fn combine(self, other: Self) -> Self {
        Self {
            diff_sq: self.diff_sq + other.diff_sq,
            reference_sq: self.reference_sq + other.reference_sq,
            points: self.points + other.points,
        }
    }

    /// `‖η_c − η_s‖₂ / ‖η_s‖₂`, with `0/0 = 0`.
    pub fn relative(&self) -> Result<f64> {
        let diff = self.diff_sq.sqrt();
        let reference = self.reference_sq.sqrt();
        if reference > 0.0 {
            Ok(diff / reference)
        } else if diff < ZERO_NORM {
            Ok(0.0)
        } else {
            Err(Error::Config(format!(
                "reference run vanishes on the comparison window but the difference is {diff:e}"
            )))
        }
    }
}

/// Accumulates window norms, aligning the two grids by x-coordinate.
pub fn window_norms(
    nosponge: &Snapshot,
    sponge: &Snapshot,
    window: &ComparisonWindow,
) -> Result<WindowNorms> {
    let (hc, hs) = (&nosponge.header, &sponge.header);
    if (hc.dx - hs.dx).abs() > ALIGN_TOL * hs.dx.abs().max(1.0) {
        return Err(Error::GridMismatch(format!(
            "dx differs between runs ({} vs {})",
            hc.dx, hs.dx
        )));
    }
    if (hc.t - hs.t).abs() > 1e-9 * hs.t.abs().max(1.0) {
        return Err(Error::GridMismatch(format!(
            "snapshot times differ ({} vs {})",
            hc.t, hs.t
        )));
    }
    if nosponge.x.is_empty() {
        return Err(Error::GridMismatch("empty no-sponge grid".into()));
    }
    let dx = hs.dx;
    let origin = nosponge.x[0];
    let mut norms = WindowNorms {
        diff_sq: 0.0,
        reference_sq: 0.0,
        points: 0,
    };
    for (j, &x) in sponge.x.iter().enumerate() {
        if !window.contains(x) {
            continue;
        }
        let pos = ((x - origin) / dx).round();
        let matched = (pos >= 0.0)
            .then_some(pos as usize)
            .filter(|&i| i < nosponge.x.len() && (nosponge.x[i] - x).abs() <= ALIGN_TOL);
        let Some(i) = matched else {
            return Err(Error::GridMismatch(format!(
                "window point x = {x} has no counterpart in the no-sponge grid"
            )));
        };
        let d = nosponge.eta[i] - sponge.eta[j];
        norms.diff_sq += d * d;
        norms.reference_sq += sponge.eta[j] * sponge.eta[j];
        norms.points += 1;
    }
    Ok(norms)
}

/// `E(t) = ‖η_c − η_s‖₂ / ‖η_s‖₂` over the window, `η_c` without sponge.
pub fn relative_error(
    nosponge: &Snapshot,
    sponge: &Snapshot,
    window: &ComparisonWindow,
) -> Result<f64> {
    window_norms(nosponge, sponge, window)?.relative()
}

/// Per-snapshot `max |η|` over a closed region, with its location.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AmplitudeSeries {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub locations: Vec<f64>,
}

/// `max |η|` over `[lo, hi]` and where it occurs (NaN location if the region is empty).
pub fn peak_in(x: &[f64], eta: &[f64], lo: f64, hi: f64) -> (f64, f64) {
    x.iter().zip(eta).filter(|(&x, _)| lo <= x && x <= hi).fold(
        (0.0, f64::NAN),
        |(best, at), (&x, &e)| {
            if at.is_nan() || e.abs() > best {
                (e.abs(), x)
            } else {
                (best, at)
            }
        },
    )
}

pub fn amplitude_series<'a>(
    snapshots: impl IntoIterator<Item = &'a Snapshot>,
    region: (f64, f64),
) -> AmplitudeSeries {
    let mut out = AmplitudeSeries::default();
    for s in snapshots {
        let (v, at) = peak_in(&s.x, &s.eta, region.0, region.1);
        out.times.push(s.header.t);
        out.values.push(v);
        out.locations.push(at);
    }
    out
}

/// `max |η|` where the sponge is past half strength, `s(x) < −a1/2`.
pub fn boundary_activity(eta: &[f64], sponge: &SpongeProfile<f64>) -> f64 {
    eta.iter()
        .zip(sponge.absorbing_mask())
        .filter(|(_, m)| *m)
        .map(|(e, _)| e.abs())
        .fold(0.0, f64::max)
}

/// [`boundary_activity`] restricted to the left (inflow) side, `x < 0`.
pub fn inflow_activity(x: &[f64], eta: &[f64], sponge: &SpongeProfile<f64>) -> f64 {
    x.iter()
        .zip(eta)
        .zip(sponge.absorbing_mask())
        .filter(|((&x, _), m)| *m && x < 0.0)
        .map(|((_, e), _)| e.abs())
        .fold(0.0, f64::max)
}

/// Number of strict interior local maxima and minima.
pub fn local_extrema(values: &[f64]) -> (usize, usize) {
    values.windows(3).fold((0, 0), |(max, min), w| {
        (
            max + usize::from(w[1] > w[0] && w[1] > w[2]),
            min + usize::from(w[1] < w[0] && w[1] < w[2]),
        )
    })
}

//! Plain-text snapshot files.
//!
//! ```text
//! n=1024
//! dx=2.0000000000000001e-1
//! t=0.0000000000000000e0
//! alpha=1.0000000000000000e-2
//! beta=1.0000000000000000e-2
//! froude=-1.0023051622000000e0
//! sponge=1
//! -1.0240000000000001e2 1.2e-50 3.4e-50
//! ...
//! ```
//! Stationary solutions add `stationary=1`, `amplitude=`, `residual=` and
//! `iterations=` header lines. Data rows are `x eta u` with 17 significant digits.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::evolution::WaveState;
use crate::stationary::StationarySolution;

/// Extra header block written for stationary solutions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryMeta {
    pub amplitude: f64,
    pub residual: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotHeader {
    pub n: usize,
    pub dx: f64,
    pub t: f64,
    pub alpha: f64,
    pub beta: f64,
    pub froude: f64,
    pub sponge: bool,
    pub stationary: Option<StationaryMeta>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub header: SnapshotHeader,
    pub x: Vec<f64>,
    pub eta: Vec<f64>,
    pub u: Vec<f64>,
}

/// `snapshot_000042.dat`
pub fn snapshot_file_name(index: usize) -> String {
    format!("snapshot_{index:06}.dat")
}

impl Snapshot {
    pub fn from_state(header: SnapshotHeader, x: &[f64], state: &WaveState<f64>) -> Result<Self> {
        let snap = Self {
            header: SnapshotHeader {
                t: state.time,
                ..header
            },
            x: x.to_vec(),
            eta: state.eta.clone(),
            u: state.u.clone(),
        };
        snap.check()?;
        Ok(snap)
    }

    pub fn from_stationary(solution: &StationarySolution<f64>, alpha: f64, beta: f64) -> Self {
        Self {
            header: SnapshotHeader {
                n: solution.grid.len(),
                dx: solution.grid.dx(),
                t: 0.0,
                alpha,
                beta,
                froude: solution.froude,
                sponge: false,
                stationary: Some(StationaryMeta {
                    amplitude: solution.amplitude,
                    residual: solution.residual,
                    iterations: solution.iterations,
                }),
            },
            x: solution.grid.points().to_vec(),
            eta: solution.eta.clone(),
            u: solution.u.clone(),
        }
    }

    pub fn state(&self) -> WaveState<f64> {
        WaveState::new(self.eta.clone(), self.u.clone(), self.header.t)
    }

    fn check(&self) -> Result<()> {
        for len in [self.x.len(), self.eta.len(), self.u.len()] {
            if len != self.header.n {
                return Err(Error::Length {
                    expected: self.header.n,
                    found: len,
                });
            }
        }
        Ok(())
    }

    pub fn render(&self) -> String {
        let h = &self.header;
        let mut out = String::with_capacity(80 * (h.n + 12));
        let _ = writeln!(out, "n={}", h.n);
        let _ = writeln!(out, "dx={:.16e}", h.dx);
        let _ = writeln!(out, "t={:.16e}", h.t);
        let _ = writeln!(out, "alpha={:.16e}", h.alpha);
        let _ = writeln!(out, "beta={:.16e}", h.beta);
        let _ = writeln!(out, "froude={:.16e}", h.froude);
        let _ = writeln!(out, "sponge={}", u8::from(h.sponge));
        if let Some(m) = &h.stationary {
            let _ = writeln!(out, "stationary=1");
            let _ = writeln!(out, "amplitude={:.16e}", m.amplitude);
            let _ = writeln!(out, "residual={:.16e}", m.residual);
            let _ = writeln!(out, "iterations={}", m.iterations);
        }
        for j in 0..h.n {
            let _ = writeln!(
                out,
                "{:.16e} {:.16e} {:.16e}",
                self.x[j], self.eta[j], self.u[j]
            );
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut fields = HeaderFields::default();
        let mut lines = text.lines().enumerate().peekable();
        while let Some(&(idx, line)) = lines.peek() {
            let line = line.trim();
            let Some((key, value)) = line.split_once('=') else {
                break;
            };
            fields.set(key.trim(), value.trim(), idx + 1)?;
            lines.next();
        }
        let header = fields.finish()?;

        let mut x = Vec::with_capacity(header.n);
        let mut eta = Vec::with_capacity(header.n);
        let mut u = Vec::with_capacity(header.n);
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let mut cols = line.split_whitespace();
            for dest in [&mut x, &mut eta, &mut u] {
                let col = cols.next().ok_or_else(|| Error::Parse {
                    line: idx + 1,
                    message: "expected three columns `x eta u`".into(),
                })?;
                dest.push(parse_f64(col, idx + 1)?);
            }
            if cols.next().is_some() {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: "trailing columns after `x eta u`".into(),
                });
            }
        }
        if x.len() != header.n {
            return Err(Error::Parse {
                line: text.lines().count(),
                message: format!("expected {} data rows, found {}", header.n, x.len()),
            });
        }
        Ok(Self { header, x, eta, u })
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.render())?;
        Ok(())
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }
}

fn parse_f64(text: &str, line: usize) -> Result<f64> {
    text.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid number `{text}`"),
    })
}

#[derive(Default)]
struct HeaderFields {
    n: Option<usize>,
    dx: Option<f64>,
    t: Option<f64>,
    alpha: Option<f64>,
    beta: Option<f64>,
    froude: Option<f64>,
    sponge: Option<bool>,
    stationary: bool,
    amplitude: Option<f64>,
    residual: Option<f64>,
    iterations: Option<usize>,
}

impl HeaderFields {
    fn set(&mut self, key: &str, value: &str, line: usize) -> Result<()> {
        let int = |v: &str| {
            v.parse::<usize>().map_err(|_| Error::Parse {
                line,
                message: format!("invalid integer `{v}` for `{key}`"),
            })
        };
        let flag = |v: &str| match v {
            "0" => Ok(false),
            "1" => Ok(true),
            _ => Err(Error::Parse {
                line,
                message: format!("`{key}` must be 0 or 1, got `{v}`"),
            }),
        };
        match key {
            "n" => self.n = Some(int(value)?),
            "dx" => self.dx = Some(parse_f64(value, line)?),
            "t" => self.t = Some(parse_f64(value, line)?),
            "alpha" => self.alpha = Some(parse_f64(value, line)?),
            "beta" => self.beta = Some(parse_f64(value, line)?),
            "froude" => self.froude = Some(parse_f64(value, line)?),
            "sponge" => self.sponge = Some(flag(value)?),
            "stationary" => self.stationary = flag(value)?,
            "amplitude" => self.amplitude = Some(parse_f64(value, line)?),
            "residual" => self.residual = Some(parse_f64(value, line)?),
            "iterations" => self.iterations = Some(int(value)?),
            _ => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown header key `{key}`"),
                })
            }
        }
        Ok(())
    }

    fn finish(self) -> Result<SnapshotHeader> {
        fn need<V>(v: Option<V>, key: &str) -> Result<V> {
            v.ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("missing header key `{key}`"),
            })
        }
        let stationary = if self.stationary {
            Some(StationaryMeta {
                amplitude: need(self.amplitude, "amplitude")?,
                residual: need(self.residual, "residual")?,
                iterations: need(self.iterations, "iterations")?,
            })
        } else {
            None
        };
        Ok(SnapshotHeader {
            n: need(self.n, "n")?,
            dx: need(self.dx, "dx")?,
            t: need(self.t, "t")?,
            alpha: need(self.alpha, "alpha")?,
            beta: need(self.beta, "beta")?,
            froude: need(self.froude, "froude")?,
            sponge: need(self.sponge, "sponge")?,
            stationary,
        })
    }
}

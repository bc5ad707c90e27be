//! Pseudospectral solver for the Boussinesq water-wave equations with an
//! absorbing sponge layer.
//!
//! The crate is generic over the scalar type (`f32` or `f64`, see [`Real`]);
//! the `*64` aliases below fix it to double precision, which every solver
//! tolerance in this crate assumes.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod diagnostics;
pub mod error;
pub mod evolution;
pub mod linalg;
pub mod params;
pub mod quadrature;
pub mod scalar;
pub mod scenario;
pub mod snapshot;
pub mod spectral;
pub mod sponge;
pub mod stationary;

pub use config::{FroudeMode, InitialKind, Scenario, ScenarioConfig, TopographyKind};
pub use diagnostics::{ComparisonWindow, ErrorSeries};
pub use error::{Error, Result};
pub use evolution::{
    evolve, evolve_with, EvolutionConfig, Forcing, Integrator, Topography, WaveState,
};
pub use params::PhysicalParams;
pub use scalar::Real;
pub use scenario::{run_scenario, run_single, write_outputs, ScenarioResult};
pub use snapshot::{Snapshot, SnapshotHeader};
pub use spectral::{Grid, Representation, SpectralField, Transform};
pub use sponge::{DampedWaveProblem, SpongeProfile};
pub use stationary::{NewtonOptions, StationaryGuess, StationarySolution};

pub type Grid64 = Grid<f64>;
pub type SpectralField64 = SpectralField<f64>;
pub type Transform64 = Transform<f64>;
pub type SpongeProfile64 = SpongeProfile<f64>;
pub type PhysicalParams64 = PhysicalParams<f64>;
pub type StationarySolution64 = StationarySolution<f64>;
pub type WaveState64 = WaveState<f64>;
pub type EvolutionConfig64 = EvolutionConfig<f64>;

//! Shear dispersion of a passive tracer in a channel driven by oscillatory
//! flow.
//!
//! The long-time streamwise spreading rate `D` of particles that diffuse
//! across a channel `[0, a]` while being advected by `u(t, y)` follows from
//! a periodic cell problem. This crate provides closed forms for the
//! classical profiles, a finite-difference cell solver for arbitrary
//! profiles and vertical drift, small/large frequency asymptotics,
//! symmetry decomposition, and a Monte Carlo oracle based on the underlying
//! stochastic differential equation.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar to `f64` or `f32`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod cell_solver;
pub mod closed_forms;
pub mod domain;
pub mod error;
pub mod scalar;
pub mod sde;
pub mod stats;
pub mod superposition;
pub mod tridiag;

pub use cell_solver::{
    dispersivity_from_field, numerical_dispersivity, solve_cell_problem, steady_dispersivity,
    ComplexBvp, ComplexField, DomainPolicy, FrequencyGroup, SolveDomain,
};
pub use closed_forms::{closed_form, closed_form_dispersivity, d1, d2, ClosedFormKind};
pub use domain::{
    dimensional_dispersivity, evaluate_velocity, nondimensionalize, remove_mean,
    stationary_density, ChannelConfig, DensityProfile, DispersivityEstimate, FlowSpec, Harmonic,
    Metadata, Method, Parity, ProfileKind, ScaleFactors, SpatialProfile, VerticalDrift,
};
pub use error::{Error, Result};
pub use scalar::Real;

pub type Channel = ChannelConfig<f64>;
pub type Flow = FlowSpec<f64>;
pub type Profile = SpatialProfile<f64>;
pub type Estimate = DispersivityEstimate<f64>;
pub type Channel32 = ChannelConfig<f32>;
pub type Flow32 = FlowSpec<f32>;
pub type Profile32 = SpatialProfile<f32>;
pub type Estimate32 = DispersivityEstimate<f32>;

//! Linear nonlocal convection `u_t + 𝒟u = 0` on the line with a spatially
//! varying horizon ζ(x), where
//! `𝒟u(x) = ∫₀^∞ (u(x) − u(x − s)) γ(s, x) ds` and `γ(s, x) = H(s/ζ)/ζ²`.
//!
//! The crate assembles an asymptotically compatible upwind stencil, steps it
//! with forward Euler and measures how jumps in u and u_x evolve.

pub mod error;
pub mod grid;
pub mod horizon;
pub mod initial;
pub mod kernel;
pub mod quadrature;
pub mod scenario;
pub mod singularity;
pub mod solver;
pub mod stencil;

pub use error::{Error, Result};
pub use grid::Grid;
pub use horizon::{HorizonDescriptor, HorizonField, Reach};
pub use initial::{InitialData, InitialDescriptor, Jump};
pub use kernel::{GaussianProfile, Profile, ReferenceKernel};
pub use scenario::{presets, Outputs, Scenario, ScenarioConfig, Simulation};
pub use singularity::{JumpLaws, JumpSeries, Method, Quantity};
pub use solver::{Snapshot, SnapshotStore, SolverState, StabilityReport};
pub use stencil::{CoefficientRow, Stencil};

//! Time integration of `i∂ₜu = (−Δ)ˢu + Vu + g|u|²u` by operator splitting.
//!
//! Both sub-flows are solved exactly: the kinetic part is a unimodular
//! Fourier multiplier and the potential part is a pointwise phase rotation.
//! The `L²` norm is therefore conserved up to roundoff for any `dt` unless
//! dealiasing is switched on.

mod config;
mod flows;
mod initial;
mod run;

pub use config::{Integrator, SolverConfig};
pub use flows::{kinetic_flow, lie_step, potential_flow, strang_step, RunState};
pub use initial::{initial_bump, initial_bump_at, smooth_bump, smooth_bump_at, InitialData};
pub use run::{run, DiagnosticRow, RunRecord, Simulation, Snapshot};

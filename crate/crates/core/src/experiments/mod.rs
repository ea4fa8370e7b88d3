//! Sweeps over regularization nets: moderateness of the solution net,
//! uniqueness as negligibility, compatibility with classical solutions, and
//! the four case presets.
//!
//! Every study advances its runs in lockstep, so differences between runs are
//! taken at each recorded time without storing trajectories. Results are
//! assembled in net order and do not depend on the thread count.

mod case;
mod compatibility;
mod net;
mod preset;
mod sweep;
mod uniqueness;

pub use case::{
    case_report, nondecreasing_with_slack, nonincreasing_with_slack, trapping_marker, CaseReport, MarkerKind,
    ORDER_SLACK, TRAPPING_WINDOW,
};
pub use compatibility::{compatibility_study, CompatibilityReport, CompatibilityRow, MONOTONE_SLACK};
pub use net::EpsilonNet;
pub use preset::{CaseLabel, CasePreset};
pub use sweep::{run_sweep, EpsilonRun, Problem, SweepResult};
pub use uniqueness::{uniqueness_study, Perturbation, PerturbationTarget, UniquenessReport, UniquenessRow};

use std::fmt;

use serde::Serialize;

/// Non-fatal conditions surfaced to reports and manifests.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    /// Mollifier support radius below four grid spacings.
    UnderResolved { epsilon: f64, omega: f64, dx: f64 },
    /// Time step above `2π / max|k|^{2s}`; top modes rotate by more than a
    /// full turn per step.
    PhaseWrap { dt: f64, dt_max: f64 },
    /// Snapshot time moved to the nearest step.
    SnapshotBinding { requested: f64, bound: f64 },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::UnderResolved { epsilon, omega, dx } => write!(
                f,
                "under-resolved mollifier at epsilon = {epsilon}: omega = {omega} < 4*dx = {}",
                4.0 * dx
            ),
            Warning::PhaseWrap { dt, dt_max } => {
                write!(f, "dt = {dt} exceeds phase-wrap heuristic dt_max = {dt_max}")
            }
            Warning::SnapshotBinding { requested, bound } => {
                write!(f, "snapshot at t = {requested} bound to step time {bound}")
            }
        }
    }
}

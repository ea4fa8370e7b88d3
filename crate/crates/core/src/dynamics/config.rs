use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{FractionalOrder, Grid};
use crate::Warning;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Integrator {
    /// `P(dt/2) ∘ K(dt) ∘ P(dt/2)`, second order.
    #[default]
    Strang,
    /// `K(dt) ∘ P(dt)`, first order. Kept for order checks.
    Lie,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub order: FractionalOrder,
    pub final_time: f64,
    pub dt: f64,
    /// Requested snapshot times in `[0, T]`; empty means "only `T`".
    #[serde(default)]
    pub snapshot_times: Vec<f64>,
    #[serde(default)]
    pub dealias: bool,
    #[serde(default)]
    pub integrator: Integrator,
    /// Diagnostics are recorded every `diag_stride` steps and at the end.
    #[serde(default = "one")]
    pub diag_stride: u64,
    /// Accept `dt` above the phase-wrap heuristic `2π / max|k|^{2s}`.
    #[serde(default)]
    pub allow_phase_wrap: bool,
}

fn one() -> u64 {
    1
}

impl SolverConfig {
    pub fn new(order: FractionalOrder, final_time: f64, dt: f64) -> Self {
        SolverConfig {
            order,
            final_time,
            dt,
            snapshot_times: Vec::new(),
            dealias: false,
            integrator: Integrator::Strang,
            diag_stride: 1,
            allow_phase_wrap: false,
        }
    }

    pub fn with_phase_wrap(mut self, allow: bool) -> Self {
        self.allow_phase_wrap = allow;
        self
    }

    pub fn with_snapshots(mut self, times: Vec<f64>) -> Self {
        self.snapshot_times = times;
        self
    }

    pub fn with_integrator(mut self, integrator: Integrator) -> Self {
        self.integrator = integrator;
        self
    }

    pub fn with_stride(mut self, stride: u64) -> Self {
        self.diag_stride = stride;
        self
    }

    /// Grid-independent checks.
    pub fn validate(&self) -> Result<()> {
        FractionalOrder::new(self.order.s())?;
        if !(self.final_time.is_finite() && self.final_time >= 0.0) {
            return Err(Error::domain(format!("final time must be >= 0, got {}", self.final_time)));
        }
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::domain(format!("dt must be > 0, got {}", self.dt)));
        }
        if self.final_time > 0.0 && self.dt > self.final_time {
            return Err(Error::domain(format!(
                "dt = {} must not exceed the final time T = {}",
                self.dt, self.final_time
            )));
        }
        self.steps()?;
        if self.diag_stride == 0 {
            return Err(Error::domain("diag_stride must be >= 1"));
        }
        let mut prev = f64::NEG_INFINITY;
        for &t in &self.snapshot_times {
            if !(0.0..=self.final_time).contains(&t) {
                return Err(Error::domain(format!(
                    "snapshot time {t} outside [0, {}]",
                    self.final_time
                )));
            }
            if t < prev {
                return Err(Error::domain("snapshot times must be sorted"));
            }
            prev = t;
        }
        Ok(())
    }

    /// Number of steps; `T` must be an integer multiple of `dt` to within
    /// `1e-9` relative.
    pub fn steps(&self) -> Result<u64> {
        let ratio = self.final_time / self.dt;
        let steps = ratio.round();
        if (ratio - steps).abs() > 1e-9 * ratio.max(1.0) {
            return Err(Error::domain(format!(
                "T = {} is not an integer multiple of dt = {}",
                self.final_time, self.dt
            )));
        }
        Ok(steps as u64)
    }

    /// `2π / max|k|^{2s}` on `grid`.
    pub fn dt_max(&self, grid: &Grid) -> f64 {
        2.0 * std::f64::consts::PI / grid.max_symbol(self.order.s())
    }

    /// Applies the phase-wrap guard; returns the warning to record when the
    /// override is set.
    pub fn check_phase_wrap(&self, grid: &Grid) -> Result<Option<Warning>> {
        let dt_max = self.dt_max(grid);
        if self.dt <= dt_max {
            return Ok(None);
        }
        if self.allow_phase_wrap {
            Ok(Some(Warning::PhaseWrap { dt: self.dt, dt_max }))
        } else {
            Err(Error::domain(format!(
                "dt = {} exceeds the phase-wrap limit dt_max = {dt_max:.3e}; \
                 set allow_phase_wrap to run anyway",
                self.dt
            )))
        }
    }

    /// Snapshot requests bound to step indices, with binding warnings.
    pub(crate) fn bind_snapshots(&self) -> (Vec<(f64, u64)>, Vec<Warning>) {
        let steps = self.steps().unwrap_or(0);
        let requested: Vec<f64> = if self.snapshot_times.is_empty() {
            vec![self.final_time]
        } else {
            self.snapshot_times.clone()
        };
        let mut warnings = Vec::new();
        let bound = requested
            .into_iter()
            .map(|t| {
                let k = ((t / self.dt).round() as u64).min(steps);
                let tb = k as f64 * self.dt;
                if (tb - t).abs() > 1e-12 * t.abs().max(1.0) {
                    warnings.push(Warning::SnapshotBinding { requested: t, bound: tb });
                }
                (t, k)
            })
            .collect();
        (bound, warnings)
    }
}

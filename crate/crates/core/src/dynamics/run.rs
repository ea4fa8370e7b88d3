use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use super::config::SolverConfig;
use super::flows::{check_grids, Propagator};
use crate::diagnostics::hamiltonian;
use crate::error::Result;
use crate::regularization::GridCoefficient;
use crate::spectral::{hs_norm, lp_norm, ComplexField, Grid, LpExponent};
use crate::Warning;

/// Field saved at a requested time, bound to the nearest step.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub requested: f64,
    pub t: f64,
    pub step: u64,
    pub field: ComplexField,
}

impl Snapshot {
    pub fn binding_error(&self) -> f64 {
        (self.t - self.requested).abs()
    }
}

/// One row of the diagnostics time series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagnosticRow {
    pub t: f64,
    pub mass: f64,
    pub hamiltonian: f64,
    pub kinetic: f64,
    pub potential: f64,
    pub interaction: f64,
    pub hs_norm: f64,
    pub l4_norm: f64,
    pub linf_norm: f64,
}

/// Time series and snapshots of one run.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub config: SolverConfig,
    pub steps: u64,
    pub rows: Vec<DiagnosticRow>,
    pub snapshots: Vec<Snapshot>,
    /// `max_t |u(t, x_j)|` over the recorded times.
    pub peak_modulus: Vec<f64>,
    pub final_field: ComplexField,
    pub warnings: Vec<Warning>,
}

fn relative_spread(values: impl Iterator<Item = f64>) -> f64 {
    let mut it = values.peekable();
    let Some(&first) = it.peek() else { return 0.0 };
    let scale = first.abs();
    let worst = it.map(|x| (x - first).abs()).fold(0.0, f64::max);
    if scale > 0.0 {
        worst / scale
    } else {
        worst
    }
}

impl RunRecord {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn times(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.t).collect()
    }

    /// `max_t |M(t) − M(0)| / M(0)` for the `L²` norm.
    pub fn mass_drift(&self) -> f64 {
        relative_spread(self.rows.iter().map(|r| r.mass))
    }

    pub fn hamiltonian_drift(&self) -> f64 {
        relative_spread(self.rows.iter().map(|r| r.hamiltonian))
    }

    pub fn sup_hs(&self) -> f64 {
        self.rows.iter().map(|r| r.hs_norm).fold(0.0, f64::max)
    }

    pub fn sup_linf(&self) -> f64 {
        self.rows.iter().map(|r| r.linf_norm).fold(0.0, f64::max)
    }
}

/// A run advanced step by step, so several runs can be driven in lockstep.
pub struct Simulation {
    config: SolverConfig,
    grid: Arc<Grid>,
    propagator: Propagator,
    values: Vec<Complex64>,
    v: Arc<GridCoefficient>,
    g: Arc<GridCoefficient>,
    step: u64,
    steps: u64,
    pending: Vec<(f64, u64)>,
    record: RunRecord,
}

impl Simulation {
    pub fn new(
        config: &SolverConfig,
        u0: &ComplexField,
        v: Arc<GridCoefficient>,
        g: Arc<GridCoefficient>,
    ) -> Result<Self> {
        config.validate()?;
        let grid = Arc::clone(u0.grid());
        check_grids(&grid, &v, &g)?;
        let mut warnings: Vec<Warning> = config.check_phase_wrap(&grid)?.into_iter().collect();
        let (mut pending, binding) = config.bind_snapshots();
        warnings.extend(binding);
        pending.reverse();
        let propagator =
            Propagator::new(Arc::clone(&grid), config.order, config.dt, config.integrator, config.dealias);
        let mut sim = Simulation {
            config: config.clone(),
            propagator,
            values: u0.values().to_vec(),
            v,
            g,
            step: 0,
            steps: config.steps()?,
            pending,
            record: RunRecord {
                config: config.clone(),
                steps: 0,
                rows: Vec::new(),
                snapshots: Vec::new(),
                peak_modulus: vec![0.0; grid.len()],
                final_field: u0.clone(),
                warnings,
            },
            grid,
        };
        sim.observe(true)?;
        Ok(sim)
    }

    pub fn time(&self) -> f64 {
        self.step as f64 * self.config.dt
    }

    pub fn step_index(&self) -> u64 {
        self.step
    }

    pub fn total_steps(&self) -> u64 {
        self.steps
    }

    pub fn is_finished(&self) -> bool {
        self.step >= self.steps
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn field(&self) -> ComplexField {
        ComplexField::new(Arc::clone(&self.grid), self.values.clone()).expect("length preserved")
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn record(&self) -> &RunRecord {
        &self.record
    }

    fn is_record_step(&self) -> bool {
        self.step % self.config.diag_stride == 0 || self.step == self.steps
    }

    fn observe(&mut self, force: bool) -> Result<()> {
        let recording = force || self.is_record_step();
        let snap = self.pending.last().is_some_and(|&(_, k)| k == self.step);
        if !recording && !snap {
            return Ok(());
        }
        let field = self.field();
        if recording {
            let h = hamiltonian(&field, &self.v, &self.g, self.config.order)?;
            let mut linf = 0.0f64;
            for (peak, z) in self.record.peak_modulus.iter_mut().zip(&self.values) {
                let m = z.norm();
                *peak = peak.max(m);
                linf = linf.max(m);
            }
            self.record.rows.push(DiagnosticRow {
                t: self.time(),
                mass: lp_norm(&field, LpExponent::Two),
                hamiltonian: h.total,
                kinetic: h.kinetic,
                potential: h.potential,
                interaction: h.interaction,
                hs_norm: hs_norm(&field, self.config.order),
                l4_norm: lp_norm(&field, LpExponent::Four),
                linf_norm: linf,
            });
        }
        while let Some(&(requested, k)) = self.pending.last() {
            if k != self.step {
                break;
            }
            self.pending.pop();
            self.record.snapshots.push(Snapshot { requested, t: self.time(), step: k, field: field.clone() });
        }
        Ok(())
    }

    /// Advances one step. Returns `true` when diagnostics were recorded.
    pub fn step(&mut self) -> Result<bool> {
        if self.is_finished() {
            return Ok(false);
        }
        self.propagator.step(&mut self.values, self.v.values(), self.g.values(), self.step + 1)?;
        self.step += 1;
        self.observe(false)?;
        Ok(self.is_record_step())
    }

    /// Steps until the next recorded time; `None` once the run is over.
    pub fn advance_to_record(&mut self) -> Result<Option<f64>> {
        while !self.is_finished() {
            if self.step()? {
                return Ok(Some(self.time()));
            }
        }
        Ok(None)
    }

    pub fn finish(mut self) -> Result<RunRecord> {
        while !self.is_finished() {
            self.step()?;
        }
        self.record.steps = self.step;
        self.record.final_field = self.field();
        Ok(self.record)
    }
}

/// Integrates from `0` to `T` with the configured splitting.
pub fn run(
    config: &SolverConfig,
    u0: &ComplexField,
    v: &GridCoefficient,
    g: &GridCoefficient,
) -> Result<RunRecord> {
    Simulation::new(config, u0, Arc::new(v.clone()), Arc::new(g.clone()))?.finish()
}

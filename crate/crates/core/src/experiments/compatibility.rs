use std::sync::Arc;

use serde::Serialize;

use super::net::EpsilonNet;
use super::sweep::{assemble, build_simulations, l2_distance, lockstep, with_jobs, EpsilonRun, Problem};
use crate::dynamics::{RunRecord, Simulation, SolverConfig};
use crate::error::{Error, Result};
use crate::regularization::{fit_log_log, PowerFit};

/// Slack allowed between successive differences along the net.
pub const MONOTONE_SLACK: f64 = 1.10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompatibilityRow {
    pub epsilon: f64,
    pub omega: f64,
    /// `sup_t ‖u_ε(t) − u(t)‖_{L²}` against the unmollified run.
    pub sup_l2_diff: f64,
    /// `‖V_ε − V‖_∞ + ‖g_ε − g‖_∞`.
    pub coefficient_error: f64,
    /// `sup_l2_diff / (e^T · coefficient_error)`; `None` if the error is 0.
    pub gronwall_ratio: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct CompatibilityReport {
    pub rows: Vec<CompatibilityRow>,
    /// Fit of `sup_l2_diff` against `ω(ε)`; `None` when a difference is 0.
    pub decay: Option<PowerFit>,
    /// Each difference is below [`MONOTONE_SLACK`] times its predecessor.
    pub monotone: bool,
    pub reference: RunRecord,
    pub runs: Vec<EpsilonRun>,
}

impl CompatibilityReport {
    pub fn max_difference(&self) -> f64 {
        self.rows.iter().map(|r| r.sup_l2_diff).fold(0.0, f64::max)
    }

    pub fn max_gronwall_ratio(&self) -> Option<f64> {
        self.rows.iter().filter_map(|r| r.gronwall_ratio).reduce(f64::max)
    }
}

/// Compares each `u_ε` with the solution for the unmollified coefficients.
///
/// Only constant and smooth terms are admitted, so the classical problem is
/// well defined on the grid.
pub fn compatibility_study(
    problem: &Problem,
    net: &EpsilonNet,
    config: &SolverConfig,
    jobs: Option<usize>,
) -> Result<CompatibilityReport> {
    if net.is_empty() {
        return Err(Error::domain("compatibility study needs a nonempty net"));
    }
    if problem.v.is_singular() || problem.g.is_singular() {
        return Err(Error::domain(
            "compatibility study needs smooth coefficients; a delta has no classical limit",
        ));
    }
    let v = Arc::new(problem.v.sample_classical(&problem.grid)?);
    let g = Arc::new(problem.g.sample_classical(&problem.grid)?);
    let (mut sims, warnings) = build_simulations(problem, net, config)?;
    let mut coefficient_errors = Vec::with_capacity(sims.len());
    for &eps in net.values() {
        let (ve, ge) = problem.regularized(eps, net)?;
        coefficient_errors.push(ve.linf_distance(&v)? + ge.linf_distance(&g)?);
    }
    sims.push(Simulation::new(config, &problem.u0, Arc::clone(&v), Arc::clone(&g))?);

    let m = net.len();
    let dx = problem.grid.dx();
    let mut sup = vec![0.0f64; m];
    with_jobs(jobs, || {
        lockstep(&mut sims, |sims| {
            let reference = sims[m].values();
            for (i, s) in sup.iter_mut().enumerate() {
                *s = s.max(l2_distance(sims[i].values(), reference, dx));
            }
            Ok(())
        })
    })?;
    let reference = sims.pop().expect("reference pushed above").finish()?;
    let runs = assemble(net, sims, warnings)?;

    let growth = config.final_time.exp();
    let rows: Vec<CompatibilityRow> = runs
        .iter()
        .zip(&sup)
        .zip(&coefficient_errors)
        .map(|((r, &d), &c)| CompatibilityRow {
            epsilon: r.epsilon,
            omega: r.omega,
            sup_l2_diff: d,
            coefficient_error: c,
            gronwall_ratio: (c > 0.0).then(|| d / (growth * c)),
        })
        .collect();
    let monotone = rows.windows(2).all(|w| w[1].sup_l2_diff <= MONOTONE_SLACK * w[0].sup_l2_diff);
    let pairs: Vec<(f64, f64)> = rows.iter().map(|r| (r.omega, r.sup_l2_diff)).collect();
    let decay = if pairs.iter().all(|p| p.1 > 0.0) { fit_log_log(&pairs).ok() } else { None };
    Ok(CompatibilityReport { rows, decay, monotone, reference, runs })
}

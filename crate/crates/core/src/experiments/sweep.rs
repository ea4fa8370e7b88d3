use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use super::net::EpsilonNet;
use crate::dynamics::{RunRecord, Simulation, SolverConfig};
use crate::error::{Error, Result};
use crate::regularization::{fit_moderateness, regularize, CoefficientSpec, GridCoefficient, PowerFit};
use crate::spectral::{ComplexField, Grid};
use crate::Warning;

/// Coefficient specifications and initial datum on a fixed grid.
#[derive(Debug, Clone)]
pub struct Problem {
    pub grid: Arc<Grid>,
    pub v: CoefficientSpec,
    pub g: CoefficientSpec,
    pub u0: ComplexField,
}

impl Problem {
    pub fn new(grid: Arc<Grid>, v: CoefficientSpec, g: CoefficientSpec, u0: ComplexField) -> Result<Self> {
        if !grid.same_as(u0.grid()) {
            return Err(Error::GridMismatch("initial field lives on a different grid".into()));
        }
        v.validate_on(&grid)?;
        g.validate_on(&grid)?;
        Ok(Problem { grid, v, g, u0 })
    }

    /// `(V_ε, g_ε)` on the problem grid.
    pub fn regularized(&self, eps: f64, net: &EpsilonNet) -> Result<(GridCoefficient, GridCoefficient)> {
        Ok((
            regularize(&self.v, eps, net.law(), &self.grid)?,
            regularize(&self.g, eps, net.law(), &self.grid)?,
        ))
    }
}

/// Runs `f` on a pool of `jobs` threads, or on the global pool.
pub(crate) fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match jobs {
        Some(0) => Err(Error::domain("--jobs must be >= 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::domain(format!("cannot build thread pool: {e}")))?
            .install(f),
        None => f(),
    }
}

/// Advances runs that share one solver configuration from record to record,
/// calling `observe` at `t = 0` and after every recorded step.
pub(crate) fn lockstep(
    sims: &mut [Simulation],
    mut observe: impl FnMut(&[Simulation]) -> Result<()>,
) -> Result<()> {
    observe(sims)?;
    while !sims.iter().all(Simulation::is_finished) {
        let times = sims
            .par_iter_mut()
            .map(Simulation::advance_to_record)
            .collect::<Result<Vec<_>>>()?;
        debug_assert!(times.windows(2).all(|w| w[0] == w[1]));
        observe(sims)?;
    }
    Ok(())
}

pub(crate) fn l2_distance(a: &[Complex64], b: &[Complex64], dx: f64) -> f64 {
    (a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>() * dx).sqrt()
}

/// One member of a sweep.
#[derive(Debug, Clone)]
pub struct EpsilonRun {
    pub epsilon: f64,
    pub omega: f64,
    pub record: RunRecord,
    /// Warnings raised while regularizing `V` and `g`.
    pub coefficient_warnings: Vec<Warning>,
}

impl EpsilonRun {
    pub fn warnings(&self) -> Vec<Warning> {
        let mut all = self.coefficient_warnings.clone();
        for w in &self.record.warnings {
            if !all.contains(w) {
                all.push(w.clone());
            }
        }
        all
    }
}

/// Independent runs over an ε-net and the cross-ε tables.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub net: EpsilonNet,
    pub runs: Vec<EpsilonRun>,
    /// `sup_t ‖u_εi(t) − u_εj(t)‖_{L²}` over the recorded times.
    pub pairwise_sup_l2: Vec<Vec<f64>>,
}

impl SweepResult {
    /// `(ε, sup_t ‖u_ε(t)‖_{H^s})` per run.
    pub fn sup_hs(&self) -> Vec<(f64, f64)> {
        self.runs.iter().map(|r| (r.epsilon, r.record.sup_hs())).collect()
    }

    /// Moderateness exponent `N̂` of the `H^s` net.
    pub fn moderateness(&self) -> Result<PowerFit> {
        fit_moderateness(&self.sup_hs(), self.net.law())
    }

    /// Every distinct warning, in ε order.
    pub fn warnings(&self) -> Vec<Warning> {
        let mut all: Vec<Warning> = Vec::new();
        for w in self.runs.iter().flat_map(EpsilonRun::warnings) {
            if !all.contains(&w) {
                all.push(w);
            }
        }
        all
    }
}

pub(crate) fn build_simulations(
    problem: &Problem,
    net: &EpsilonNet,
    config: &SolverConfig,
) -> Result<(Vec<Simulation>, Vec<Vec<Warning>>)> {
    let mut sims = Vec::with_capacity(net.len());
    let mut warnings = Vec::with_capacity(net.len());
    for &eps in net.values() {
        let (v, g) = problem.regularized(eps, net)?;
        let mut w: Vec<Warning> = v.warnings().to_vec();
        for x in g.warnings() {
            if !w.contains(x) {
                w.push(x.clone());
            }
        }
        warnings.push(w);
        sims.push(Simulation::new(config, &problem.u0, Arc::new(v), Arc::new(g))?);
    }
    Ok((sims, warnings))
}

pub(crate) fn assemble(
    net: &EpsilonNet,
    sims: Vec<Simulation>,
    warnings: Vec<Vec<Warning>>,
) -> Result<Vec<EpsilonRun>> {
    net.values()
        .iter()
        .zip(net.omegas())
        .zip(sims.into_iter().zip(warnings))
        .map(|((&epsilon, omega), (sim, coefficient_warnings))| {
            Ok(EpsilonRun { epsilon, omega, record: sim.finish()?, coefficient_warnings })
        })
        .collect()
}

/// Runs every ε of the net, in parallel on at most `jobs` threads.
///
/// Runs advance in lockstep so pairwise differences can be taken at each
/// recorded time without storing trajectories.
pub fn run_sweep(
    problem: &Problem,
    net: &EpsilonNet,
    config: &SolverConfig,
    jobs: Option<usize>,
) -> Result<SweepResult> {
    let (mut sims, warnings) = build_simulations(problem, net, config)?;
    let m = sims.len();
    let dx = problem.grid.dx();
    let mut pairwise = vec![vec![0.0f64; m]; m];
    with_jobs(jobs, || {
        lockstep(&mut sims, |sims| {
            for i in 0..m {
                for j in i + 1..m {
                    let d = l2_distance(sims[i].values(), sims[j].values(), dx);
                    pairwise[i][j] = pairwise[i][j].max(d);
                    pairwise[j][i] = pairwise[i][j];
                }
            }
            Ok(())
        })
    })?;
    Ok(SweepResult { net: net.clone(), runs: assemble(net, sims, warnings)?, pairwise_sup_l2: pairwise })
}

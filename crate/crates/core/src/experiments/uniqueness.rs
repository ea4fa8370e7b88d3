use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::net::EpsilonNet;
use super::sweep::{assemble, l2_distance, lockstep, with_jobs, EpsilonRun, Problem};
use crate::dynamics::{RunRecord, Simulation, SolverConfig};
use crate::error::{Error, Result};
use crate::regularization::{fit_negligibility, NegligibilityFit, Profile};
use crate::spectral::ComplexField;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PerturbationTarget {
    Data,
    Potential,
    Coupling,
}

/// `ε^k · profile` added to one of `u₀`, `V_ε`, `g_ε`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Perturbation {
    pub target: PerturbationTarget,
    pub exponent: f64,
    pub profile: Profile,
}

impl Perturbation {
    /// Unit Gaussian of width `0.5` centered at `x = 5`.
    pub fn gaussian(target: PerturbationTarget, exponent: f64) -> Self {
        Perturbation {
            target,
            exponent,
            profile: Profile::Gaussian { amplitude: 1.0, center: 5.0, width: 0.5 },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.exponent.is_finite() && self.exponent > 0.0) {
            return Err(Error::domain(format!("perturbation exponent must be > 0, got {}", self.exponent)));
        }
        self.profile.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UniquenessRow {
    pub epsilon: f64,
    pub omega: f64,
    /// `sup_t ‖u_ε(t) − ũ_ε(t)‖_{L²}`.
    pub sup_l2_diff: f64,
}

#[derive(Debug, Clone)]
pub struct UniquenessReport {
    pub perturbation: Perturbation,
    pub rows: Vec<UniquenessRow>,
    /// Fitted `k̂`; compare with `perturbation.exponent`.
    pub fit: NegligibilityFit,
    pub base: Vec<EpsilonRun>,
    /// Perturbed runs, in net order.
    pub perturbed: Vec<RunRecord>,
}

/// Runs the base and the perturbed problem for every ε and fits the rate at
/// which their difference vanishes.
pub fn uniqueness_study(
    problem: &Problem,
    perturbation: &Perturbation,
    net: &EpsilonNet,
    config: &SolverConfig,
    jobs: Option<usize>,
) -> Result<UniquenessReport> {
    perturbation.validate()?;
    let shape = perturbation.profile.sample(&problem.grid)?;
    let mut sims = Vec::with_capacity(2 * net.len());
    let mut warnings = Vec::with_capacity(net.len());
    for &eps in net.values() {
        let (v, g) = problem.regularized(eps, net)?;
        let size = eps.powf(perturbation.exponent);
        let (mut pv, mut pg, mut pu) = (v.clone(), g.clone(), problem.u0.clone());
        match perturbation.target {
            PerturbationTarget::Data => {
                let values = pu.values().iter().zip(&shape).map(|(z, s)| z + Complex64::new(size * s, 0.0)).collect();
                pu = ComplexField::new(Arc::clone(&problem.grid), values)?;
            }
            PerturbationTarget::Potential => pv = v.add_scaled(size, &shape)?,
            PerturbationTarget::Coupling => pg = g.add_scaled(size, &shape)?,
        }
        let mut w = v.warnings().to_vec();
        w.extend(g.warnings().iter().filter(|x| !v.warnings().contains(x)).cloned());
        warnings.push(w);
        sims.push(Simulation::new(config, &problem.u0, Arc::new(v), Arc::new(g))?);
        sims.push(Simulation::new(config, &pu, Arc::new(pv), Arc::new(pg))?);
    }

    let dx = problem.grid.dx();
    let mut sup = vec![0.0f64; net.len()];
    with_jobs(jobs, || {
        lockstep(&mut sims, |sims| {
            for (i, s) in sup.iter_mut().enumerate() {
                *s = s.max(l2_distance(sims[2 * i].values(), sims[2 * i + 1].values(), dx));
            }
            Ok(())
        })
    })?;

    let rows: Vec<UniquenessRow> = net
        .values()
        .iter()
        .zip(net.omegas())
        .zip(&sup)
        .map(|((&epsilon, omega), &d)| UniquenessRow { epsilon, omega, sup_l2_diff: d })
        .collect();
    let pairs: Vec<(f64, f64)> = rows.iter().map(|r| (r.epsilon, r.sup_l2_diff)).collect();
    let fit = fit_negligibility(&pairs)?;
    let mut base = Vec::with_capacity(net.len());
    let mut perturbed = Vec::with_capacity(net.len());
    for (i, sim) in sims.into_iter().enumerate() {
        if i % 2 == 0 {
            base.push(sim);
        } else {
            perturbed.push(sim.finish()?);
        }
    }
    let base = assemble(net, base, warnings)?;
    Ok(UniquenessReport { perturbation: perturbation.clone(), rows, fit, base, perturbed })
}

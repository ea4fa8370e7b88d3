use std::sync::Arc;

use serde::Serialize;

use super::net::EpsilonNet;
use super::preset::{CaseLabel, CasePreset};
use super::sweep::{assemble, build_simulations, l2_distance, lockstep, with_jobs, Problem, SweepResult};
use crate::dynamics::{RunRecord, Simulation, SolverConfig};
use crate::error::Result;
use crate::regularization::{CoefficientSpec, CoefficientTerm};
use crate::spectral::Grid;

/// Half-width of the window around `x₀` used by the trapping marker.
pub const TRAPPING_WINDOW: f64 = 0.25;
/// Relative slack allowed by the ordering checks.
pub const ORDER_SLACK: f64 = 0.05;

/// Per-ε scalar summarizing the qualitative effect of the singular point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MarkerKind {
    /// `max_t |u_ε(t, x₀)|`.
    LocalizedPerturbation,
    /// `sup_t ‖u_ε(t) − u_reg(t)‖_{L²}` against the run without deltas.
    Influence,
    /// `a(ε) = min_{|x−x₀| ≤ 1/4} max_t |u_ε(t, x)|`.
    Trapping,
}

#[derive(Debug, Clone)]
pub struct CaseReport {
    pub label: CaseLabel,
    pub sweep: SweepResult,
    pub marker_kind: Option<MarkerKind>,
    /// One value per ε, when the case defines a marker.
    pub marker: Option<Vec<f64>>,
    /// Ordering check for the marker: trapping nonincreasing, influence
    /// increasing as ε decreases.
    pub ordered: Option<bool>,
}

/// `a(ε)` from the recorded peak moduli.
pub fn trapping_marker(record: &RunRecord, grid: &Grid, x0: f64) -> f64 {
    grid.points()
        .zip(&record.peak_modulus)
        .filter(|(x, _)| grid.periodic_offset(*x, x0).abs() <= TRAPPING_WINDOW)
        .map(|(_, &m)| m)
        .fold(f64::INFINITY, f64::min)
}

/// `a_{i+1} ≤ (1 + slack)·a_i` along the net.
pub fn nonincreasing_with_slack(values: &[f64], slack: f64) -> bool {
    values.windows(2).all(|w| w[1] <= (1.0 + slack) * w[0])
}

/// `a_{i+1} ≥ (1 − slack)·a_i` along the net.
pub fn nondecreasing_with_slack(values: &[f64], slack: f64) -> bool {
    values.windows(2).all(|w| w[1] >= (1.0 - slack) * w[0])
}

fn without_deltas(spec: &CoefficientSpec) -> Result<CoefficientSpec> {
    CoefficientSpec::new(spec.terms().iter().filter(|t| !t.is_singular()).cloned().collect::<Vec<CoefficientTerm>>())
}

/// Runs a preset on `n` points and computes its qualitative marker.
pub fn case_report(
    preset: &CasePreset,
    n: usize,
    net: &EpsilonNet,
    config: &SolverConfig,
    jobs: Option<usize>,
) -> Result<CaseReport> {
    let problem = preset.problem(n)?;
    let (mut sims, warnings) = build_simulations(&problem, net, config)?;
    let m = sims.len();
    let with_reference = preset.label == CaseLabel::Case3;
    if with_reference {
        let v = without_deltas(&problem.v)?.sample_classical(&problem.grid)?;
        let g = without_deltas(&problem.g)?.sample_classical(&problem.grid)?;
        sims.push(Simulation::new(config, &problem.u0, Arc::new(v), Arc::new(g))?);
    }
    let dx = problem.grid.dx();
    let mut pairwise = vec![vec![0.0f64; m]; m];
    let mut influence = vec![0.0f64; m];
    with_jobs(jobs, || {
        lockstep(&mut sims, |sims| {
            for i in 0..m {
                for j in i + 1..m {
                    let d = l2_distance(sims[i].values(), sims[j].values(), dx);
                    pairwise[i][j] = pairwise[i][j].max(d);
                    pairwise[j][i] = pairwise[i][j];
                }
                if with_reference {
                    influence[i] = influence[i].max(l2_distance(sims[i].values(), sims[m].values(), dx));
                }
            }
            Ok(())
        })
    })?;
    if with_reference {
        sims.pop();
    }
    let sweep = SweepResult { net: net.clone(), runs: assemble(net, sims, warnings)?, pairwise_sup_l2: pairwise };
    Ok(mark(preset, &problem, sweep, influence))
}

fn mark(preset: &CasePreset, problem: &Problem, sweep: SweepResult, influence: Vec<f64>) -> CaseReport {
    let grid = &problem.grid;
    let (kind, marker, ordered) = match preset.label {
        CaseLabel::Case1 => (None, None, None),
        CaseLabel::Case2 => {
            let j = grid.nearest_index(preset.x0);
            let values: Vec<f64> = sweep.runs.iter().map(|r| r.record.peak_modulus[j]).collect();
            (Some(MarkerKind::LocalizedPerturbation), Some(values), None)
        }
        CaseLabel::Case3 => {
            let ok = nondecreasing_with_slack(&influence, 0.0);
            (Some(MarkerKind::Influence), Some(influence), Some(ok))
        }
        CaseLabel::Case4 => {
            let values: Vec<f64> =
                sweep.runs.iter().map(|r| trapping_marker(&r.record, grid, preset.x0)).collect();
            let ok = nonincreasing_with_slack(&values, ORDER_SLACK);
            (Some(MarkerKind::Trapping), Some(values), Some(ok))
        }
    };
    CaseReport { label: preset.label, sweep, marker_kind: kind, marker, ordered }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regularization::ScalingLaw;

    #[test]
    fn slack_orderings() {
        assert!(nonincreasing_with_slack(&[3.0, 3.1, 2.0], 0.05));
        assert!(!nonincreasing_with_slack(&[3.0, 3.2], 0.05));
        assert!(nondecreasing_with_slack(&[1.0, 1.0, 2.0], 0.0));
        assert!(!nondecreasing_with_slack(&[1.0, 0.9], 0.0));
    }

    #[test]
    fn case1_has_no_marker() {
        let preset = CasePreset::new(CaseLabel::Case1);
        let cfg = preset.solver(1e-3);
        let cfg = SolverConfig { final_time: 0.01, ..cfg };
        let net = preset.default_net();
        let rep = case_report(&preset, 128, &net, &cfg, None).unwrap();
        assert!(rep.marker.is_none() && rep.ordered.is_none());
        assert_eq!(rep.sweep.runs.len(), 4);
    }

    #[test]
    fn markers_have_one_entry_per_epsilon() {
        let net = EpsilonNet::new(vec![0.9, 0.5, 0.3], ScalingLaw::Power).unwrap();
        for label in [CaseLabel::Case2, CaseLabel::Case3, CaseLabel::Case4] {
            let preset = CasePreset::new(label);
            let cfg = SolverConfig { final_time: 0.01, ..preset.solver(1e-3) };
            let rep = case_report(&preset, 128, &net, &cfg, Some(2)).unwrap();
            assert_eq!(rep.marker.as_ref().unwrap().len(), 3, "{label}");
            assert!(rep.marker.unwrap().iter().all(|v| v.is_finite() && *v >= 0.0));
        }
    }

    #[test]
    fn trapping_marker_reads_window_minimum() {
        let preset = CasePreset::new(CaseLabel::Case4);
        let cfg = SolverConfig { final_time: 0.0, ..preset.solver(1e-3) };
        let net = EpsilonNet::new(vec![0.5], ScalingLaw::Power).unwrap();
        let rep = case_report(&preset, 256, &net, &cfg, None).unwrap();
        // at t = 0 the bump is zero on the left half of [4.25, 4.75]
        assert_eq!(rep.marker.unwrap()[0], 0.0);
    }
}

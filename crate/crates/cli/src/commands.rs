use std::path::PathBuf;

use fnls_core::diagnostics::{check_gns, gns_ensemble, lemma1_linfty_bound, GnsParams};
use fnls_core::dynamics::run;
use fnls_core::experiments::{
    case_report, compatibility_study, run_sweep, uniqueness_study, CaseLabel, CasePreset, EpsilonNet, EpsilonRun,
    Problem,
};
use fnls_core::regularization::{regularize, GridCoefficient, PowerFit};
use serde_json::{json, Value};

use crate::config::{Format, Resolved, RunConfig};
use crate::error::{CliError, Result};
use crate::output::{epsilon_dir, summary_csv, OutputDir, SummaryRow};

/// Flags shared by every command.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub config: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub seed: u64,
    pub dealias: bool,
}

/// Fields in the GNS ensemble written by `run`.
pub const ENSEMBLE_SIZE: usize = 100;
/// Highest mode excited in the GNS ensemble.
pub const ENSEMBLE_BANDWIDTH: usize = 16;

struct Prepared {
    resolved: Resolved,
    config_toml: String,
    out: OutputDir,
}

fn prepare(opts: &Options, label: Option<CaseLabel>) -> Result<Prepared> {
    let mut config = match (&opts.config, label) {
        (Some(path), _) => RunConfig::load(path)?,
        (None, Some(label)) => RunConfig::preset(label),
        (None, None) => return Err(CliError::config("--config <path> is required")),
    };
    if let Some(label) = label {
        match config.case {
            Some(c) if c != label => {
                return Err(CliError::config(format!("config names case '{c}' but the command asks for '{label}'")))
            }
            _ => config.case = Some(label),
        }
    }
    let mut resolved = config.resolve()?;
    if opts.dealias {
        resolved.solver.dealias = true;
        if let Some(t) = resolved.canonical.time.as_mut() {
            t.dealias = true;
        }
    }
    if let Some(dir) = &opts.out {
        if let Some(o) = resolved.canonical.output.as_mut() {
            o.dir = Some(dir.clone());
        }
    }
    let root = opts
        .out
        .clone()
        .or_else(|| resolved.out_dir.clone())
        .ok_or_else(|| CliError::config("no output directory: pass --out <dir> or set output.dir"))?;
    let config_toml = resolved.canonical.to_toml_string()?;
    let out = OutputDir::create(&root)?;
    Ok(Prepared { resolved, config_toml, out })
}

fn problem(r: &Resolved) -> Result<Problem> {
    Ok(Problem::new(r.grid.clone(), r.v.clone(), r.g.clone(), r.u0.clone())?)
}

fn require_net(r: &Resolved, command: &str) -> Result<EpsilonNet> {
    r.net
        .clone()
        .ok_or_else(|| CliError::config(format!("`{command}` needs regularization.net")))
}

fn fit_value(fit: &fnls_core::Result<PowerFit>) -> (Value, Value) {
    match fit {
        Ok(f) => (json!(f.exponent), json!(f.residual)),
        Err(_) => (Value::Null, Value::Null),
    }
}

fn write_runs(out: &mut OutputDir, runs: &[EpsilonRun], csv: bool) -> Result<()> {
    for r in runs {
        let dir = epsilon_dir(r.epsilon);
        if csv {
            out.write_record(&dir, &r.record)?;
        }
        out.warn(&dir, &r.warnings());
    }
    Ok(())
}

fn finish(p: Prepared, command: &str) -> Result<PathBuf> {
    let stride = p.resolved.solver.diag_stride;
    p.out.finish(command, &p.config_toml, stride)
}

/// Single run. Singular coefficients need `regularization.epsilon`.
pub fn cmd_run(opts: &Options) -> Result<PathBuf> {
    let mut p = prepare(opts, None)?;
    let r = &p.resolved;
    let singular = r.v.is_singular() || r.g.is_singular();
    let (v, g): (GridCoefficient, GridCoefficient) = match r.epsilon {
        Some(eps) => (regularize(&r.v, eps, r.scaling, &r.grid)?, regularize(&r.g, eps, r.scaling, &r.grid)?),
        None if singular => {
            return Err(CliError::config(
                "singular coefficients need regularization.epsilon for `run`; use `sweep` for a net",
            ))
        }
        None => (r.v.sample_classical(&r.grid)?, r.g.sample_classical(&r.grid)?),
    };
    let record = run(&r.solver, &r.u0, &v, &g)?;
    p.out.warn("coefficients", v.warnings());
    p.out.warn("coefficients", g.warnings());
    p.out.warn("solver", &record.warnings);

    if r.writes(Format::Csv) {
        p.out.write_record("", &record)?;
    }
    if r.writes(Format::Json) {
        let order = r.solver.order;
        let energy = lemma1_linfty_bound(&record.final_field, &r.u0, &v, &g, order)?;
        let gns = match GnsParams::l6_tuple(order.s()) {
            Ok(params) => {
                let bandwidth = ENSEMBLE_BANDWIDTH.min(r.grid.len() / 2 - 1);
                json!({
                    "params": params,
                    "final_field": check_gns(&record.final_field, &params)?,
                    "ensemble": gns_ensemble(&r.grid, &params, ENSEMBLE_SIZE, opts.seed, bandwidth)?,
                    "bandwidth": bandwidth,
                })
            }
            Err(e) => json!({ "skipped": e.to_string() }),
        };
        let witnesses = json!({
            "energy_estimate": energy,
            "gns": gns,
            "seed": opts.seed,
            "mass_drift": record.mass_drift(),
            "hamiltonian_drift": record.hamiltonian_drift(),
        });
        p.out.write_json("witnesses.json", &witnesses)?;
    }
    finish(p, "run")
}

/// Independent runs over the configured ε-net.
pub fn cmd_sweep(opts: &Options) -> Result<PathBuf> {
    let mut p = prepare(opts, None)?;
    let r = &p.resolved;
    let net = require_net(r, "sweep")?;
    let sweep = run_sweep(&problem(r)?, &net, &r.solver, opts.jobs)?;
    let (csv, js) = (r.writes(Format::Csv), r.writes(Format::Json));
    write_runs(&mut p.out, &sweep.runs, csv)?;
    let rows: Vec<SummaryRow> = sweep
        .runs
        .iter()
        .map(|x| SummaryRow {
            epsilon: x.epsilon,
            omega: x.omega,
            sup_hs: x.record.sup_hs(),
            sup_l2_diff: None,
            marker: None,
        })
        .collect();
    if csv {
        p.out.write("summary.csv", summary_csv(&rows).as_bytes())?;
    }
    if js {
        let (n_hat, n_res) = fit_value(&sweep.moderateness());
        let fits = json!({
            "N_hat": n_hat,
            "k_hat": Value::Null,
            "residuals": { "N_hat": n_res, "k_hat": Value::Null },
            "pairwise_sup_l2": sweep.pairwise_sup_l2,
            "diag_stride": r.solver.diag_stride,
        });
        p.out.write_json("fits.json", &fits)?;
    }
    finish(p, "sweep")
}

/// Each `u_ε` against the run with unmollified smooth coefficients.
pub fn cmd_compat(opts: &Options) -> Result<PathBuf> {
    let mut p = prepare(opts, None)?;
    let r = &p.resolved;
    let net = require_net(r, "compat")?;
    let rep = compatibility_study(&problem(r)?, &net, &r.solver, opts.jobs)?;
    let (csv, js) = (r.writes(Format::Csv), r.writes(Format::Json));
    write_runs(&mut p.out, &rep.runs, csv)?;
    if csv {
        p.out.write_record("reference", &rep.reference)?;
    }
    p.out.warn("reference", &rep.reference.warnings);
    let rows: Vec<SummaryRow> = rep
        .runs
        .iter()
        .zip(&rep.rows)
        .map(|(x, row)| SummaryRow {
            epsilon: x.epsilon,
            omega: x.omega,
            sup_hs: x.record.sup_hs(),
            sup_l2_diff: Some(row.sup_l2_diff),
            marker: None,
        })
        .collect();
    if csv {
        p.out.write("summary.csv", summary_csv(&rows).as_bytes())?;
    }
    if js {
        let pairs: Vec<(f64, f64)> = rows.iter().map(|x| (x.epsilon, x.sup_hs)).collect();
        let (n_hat, n_res) = fit_value(&fnls_core::regularization::fit_moderateness(&pairs, net.law()));
        let fits = json!({
            "N_hat": n_hat,
            "k_hat": Value::Null,
            "residuals": { "N_hat": n_res, "k_hat": Value::Null, "decay": rep.decay.map(|d| d.residual) },
            "decay_slope": rep.decay.map(|d| d.exponent),
            "monotone": rep.monotone,
            "max_gronwall_ratio": rep.max_gronwall_ratio(),
            "rows": rep.rows,
            "diag_stride": r.solver.diag_stride,
        });
        p.out.write_json("fits.json", &fits)?;
    }
    finish(p, "compat")
}

/// Base and `ε^k`-perturbed runs; fits the negligibility rate `k̂`.
pub fn cmd_unique(opts: &Options) -> Result<PathBuf> {
    let mut p = prepare(opts, None)?;
    let r = &p.resolved;
    let net = require_net(r, "unique")?;
    let perturbation =
        r.perturbation.clone().ok_or_else(|| CliError::config("`unique` needs a [perturbation] section"))?;
    let rep = uniqueness_study(&problem(r)?, &perturbation, &net, &r.solver, opts.jobs)?;
    let (csv, js) = (r.writes(Format::Csv), r.writes(Format::Json));
    write_runs(&mut p.out, &rep.base, csv)?;
    for (base, pert) in rep.base.iter().zip(&rep.perturbed) {
        let dir = format!("{}/perturbed", epsilon_dir(base.epsilon));
        if csv {
            p.out.write_record(&dir, pert)?;
        }
        p.out.warn(&dir, &pert.warnings);
    }
    let rows: Vec<SummaryRow> = rep
        .base
        .iter()
        .zip(&rep.rows)
        .map(|(x, row)| SummaryRow {
            epsilon: x.epsilon,
            omega: x.omega,
            sup_hs: x.record.sup_hs(),
            sup_l2_diff: Some(row.sup_l2_diff),
            marker: None,
        })
        .collect();
    if csv {
        p.out.write("summary.csv", summary_csv(&rows).as_bytes())?;
    }
    if js {
        let pairs: Vec<(f64, f64)> = rows.iter().map(|x| (x.epsilon, x.sup_hs)).collect();
        let (n_hat, n_res) = fit_value(&fnls_core::regularization::fit_moderateness(&pairs, net.law()));
        let k_hat = if rep.fit.is_zero_net() { json!("inf") } else { json!(rep.fit.rate) };
        let fits = json!({
            "N_hat": n_hat,
            "k_hat": k_hat,
            "residuals": { "N_hat": n_res, "k_hat": rep.fit.residual },
            "perturbation": rep.perturbation,
            "diag_stride": r.solver.diag_stride,
        });
        p.out.write_json("fits.json", &fits)?;
    }
    finish(p, "unique")
}

/// One of the four presets, with its qualitative marker.
///
/// A config may override `[grid].n`, `[time]` and `[regularization]`; the
/// coefficients, initial datum and domain length belong to the preset.
pub fn cmd_case(opts: &Options, label: Option<&str>) -> Result<PathBuf> {
    let label = match label {
        Some(s) => Some(s.parse::<CaseLabel>().map_err(|e| CliError::config(e.to_string()))?),
        None => None,
    };
    if let Some(path) = &opts.config {
        let raw = RunConfig::load(path)?;
        if raw.coefficients.is_some() || raw.initial.is_some() {
            return Err(CliError::config(
                "`case` uses the preset coefficients and initial datum; drop [coefficients]/[initial] or use `sweep`",
            ));
        }
        if label.is_none() && raw.case.is_none() {
            return Err(CliError::config("`case` needs a label, either as argument or as `case = ...`"));
        }
    } else if label.is_none() {
        return Err(CliError::config("`case` needs a label: case1, case2, case3 or case4"));
    }
    let mut p = prepare(opts, label)?;
    let r = &p.resolved;
    let preset = CasePreset::new(r.label.expect("label checked above"));
    if r.grid.length() != preset.length {
        return Err(CliError::config(format!("case presets live on [0, {}); grid.length must match", preset.length)));
    }
    let net = require_net(r, "case")?;
    let rep = case_report(&preset, r.grid.len(), &net, &r.solver, opts.jobs)?;
    let (csv, js) = (r.writes(Format::Csv), r.writes(Format::Json));
    write_runs(&mut p.out, &rep.sweep.runs, csv)?;
    let rows: Vec<SummaryRow> = rep
        .sweep
        .runs
        .iter()
        .enumerate()
        .map(|(i, x)| SummaryRow {
            epsilon: x.epsilon,
            omega: x.omega,
            sup_hs: x.record.sup_hs(),
            sup_l2_diff: None,
            marker: rep.marker.as_ref().map(|m| m[i]),
        })
        .collect();
    if csv {
        p.out.write("summary.csv", summary_csv(&rows).as_bytes())?;
    }
    if js {
        let (n_hat, n_res) = fit_value(&rep.sweep.moderateness());
        let fits = json!({
            "case": rep.label,
            "N_hat": n_hat,
            "k_hat": Value::Null,
            "residuals": { "N_hat": n_res, "k_hat": Value::Null },
            "marker_kind": rep.marker_kind,
            "marker": rep.marker,
            "ordered": rep.ordered,
            "pairwise_sup_l2": rep.sweep.pairwise_sup_l2,
            "diag_stride": r.solver.diag_stride,
        });
        p.out.write_json("fits.json", &fits)?;
    }
    finish(p, "case")
}

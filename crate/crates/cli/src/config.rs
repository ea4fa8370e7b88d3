//! TOML run configuration.
//!
//! A file either names a case preset (`case = "case2"`) and overrides whole
//! sections of it, or spells out `[grid]`, `[order]`, `[time]` and
//! `[coefficients]` itself. Unknown keys are rejected at every level.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use fnls_core::dynamics::{InitialData, Integrator, SolverConfig};
use fnls_core::experiments::{CaseLabel, CasePreset, EpsilonNet, Perturbation};
use fnls_core::regularization::{CoefficientSpec, ScalingLaw};
use fnls_core::spectral::{ComplexField, FractionalOrder, Grid};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    #[serde(alias = "L")]
    pub length: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderSection {
    pub s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSection {
    #[serde(alias = "T")]
    pub final_time: f64,
    pub dt: f64,
    #[serde(default)]
    pub snapshot_times: Vec<f64>,
    #[serde(default = "one")]
    pub diag_stride: u64,
    #[serde(default)]
    pub integrator: Integrator,
    #[serde(default)]
    pub dealias: bool,
    #[serde(default)]
    pub allow_phase_wrap: bool,
}

fn one() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientsSection {
    #[serde(rename = "V")]
    pub v: CoefficientSpec,
    pub g: CoefficientSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegularizationSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub net: Option<Vec<f64>>,
    #[serde(default)]
    pub scaling: ScalingLaw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
    #[serde(default = "all_formats")]
    pub formats: Vec<Format>,
}

fn all_formats() -> Vec<Format> {
    vec![Format::Csv, Format::Json]
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection { dir: None, formats: all_formats() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<CaseLabel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time: Option<TimeSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<CoefficientsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<InitialData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regularization: Option<RegularizationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<Perturbation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSection>,
}

/// A configuration with every section present and checked against the
/// owning types.
#[derive(Debug, Clone)]
pub struct Resolved {
    /// Every section spelled out; re-parses to the same run.
    pub canonical: RunConfig,
    pub label: Option<CaseLabel>,
    pub grid: Arc<Grid>,
    pub solver: SolverConfig,
    pub v: CoefficientSpec,
    pub g: CoefficientSpec,
    pub u0: ComplexField,
    pub scaling: ScalingLaw,
    pub epsilon: Option<f64>,
    pub net: Option<EpsilonNet>,
    pub perturbation: Option<Perturbation>,
    pub formats: Vec<Format>,
    pub out_dir: Option<PathBuf>,
}

impl Resolved {
    pub fn writes(&self, format: Format) -> bool {
        self.formats.contains(&format)
    }
}

fn at(key: &'static str) -> impl Fn(fnls_core::Error) -> CliError {
    move |e| CliError::config(format!("{key}: {e}"))
}

fn missing(section: &str) -> CliError {
    CliError::config(format!("missing [{section}] section (required when no case preset is named)"))
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|source| CliError::ConfigRead { path: path.to_path_buf(), source })?;
        toml::from_str(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))
    }

    pub fn preset(label: CaseLabel) -> Self {
        RunConfig { case: Some(label), ..RunConfig::default() }
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| CliError::config(format!("cannot serialize config: {e}")))
    }

    /// Fills sections from the preset, if any, and validates the result.
    pub fn resolve(&self) -> Result<Resolved> {
        let preset = self.case.map(CasePreset::new);
        let grid = match (&self.grid, &preset) {
            (Some(g), _) => g.clone(),
            (None, Some(p)) => GridSection { length: p.length, n: CasePreset::DEFAULT_N },
            (None, None) => return Err(missing("grid")),
        };
        let order = match (&self.order, &preset) {
            (Some(o), _) => o.clone(),
            (None, Some(_)) => OrderSection { s: 1.0 },
            (None, None) => return Err(missing("order")),
        };
        let time = match (&self.time, &preset) {
            (Some(t), _) => t.clone(),
            (None, Some(p)) => TimeSection {
                final_time: p.final_time,
                dt: CasePreset::DEFAULT_DT,
                snapshot_times: Vec::new(),
                diag_stride: 1,
                integrator: Integrator::Strang,
                dealias: false,
                allow_phase_wrap: true,
            },
            (None, None) => return Err(missing("time")),
        };
        let coefficients = match (&self.coefficients, &preset) {
            (Some(c), _) => c.clone(),
            (None, Some(p)) => CoefficientsSection { v: p.v.clone(), g: p.g.clone() },
            (None, None) => return Err(missing("coefficients")),
        };
        let initial = match (&self.initial, &preset) {
            (Some(i), _) => i.clone(),
            (None, Some(p)) => p.initial.clone(),
            (None, None) => InitialData::default(),
        };
        let regularization = match (&self.regularization, &preset) {
            (Some(r), _) => Some(r.clone()),
            (None, Some(p)) => Some(RegularizationSection {
                epsilon: None,
                net: Some(p.default_net().values().to_vec()),
                scaling: ScalingLaw::Power,
            }),
            (None, None) => None,
        };
        let output = self.output.clone().unwrap_or_default();

        let g = Arc::new(Grid::new(grid.length, grid.n).map_err(at("grid"))?);
        let s = FractionalOrder::new(order.s).map_err(at("order.s"))?;
        let solver = SolverConfig {
            order: s,
            final_time: time.final_time,
            dt: time.dt,
            snapshot_times: time.snapshot_times.clone(),
            dealias: time.dealias,
            integrator: time.integrator,
            diag_stride: time.diag_stride,
            allow_phase_wrap: time.allow_phase_wrap,
        };
        solver.validate().map_err(at("time"))?;
        solver.check_phase_wrap(&g).map_err(at("time.dt"))?;
        coefficients.v.validate_on(&g).map_err(at("coefficients.V"))?;
        coefficients.g.validate_on(&g).map_err(at("coefficients.g"))?;
        let u0 = initial.build(&g).map_err(at("initial"))?;

        let scaling = regularization.as_ref().map(|r| r.scaling).unwrap_or_default();
        scaling.validate().map_err(at("regularization.scaling"))?;
        let epsilon = regularization.as_ref().and_then(|r| r.epsilon);
        if let Some(eps) = epsilon {
            scaling.check_epsilon(eps).map_err(at("regularization.epsilon"))?;
        }
        let net = match regularization.as_ref().and_then(|r| r.net.clone()) {
            Some(values) => Some(EpsilonNet::new(values, scaling).map_err(at("regularization.net"))?),
            None => None,
        };
        if let Some(p) = &self.perturbation {
            p.validate().map_err(at("perturbation"))?;
        }
        if output.formats.is_empty() {
            return Err(CliError::config("output.formats must name at least one format"));
        }

        let canonical = RunConfig {
            case: self.case,
            grid: Some(grid),
            order: Some(order),
            time: Some(time),
            coefficients: Some(coefficients.clone()),
            initial: Some(initial),
            regularization,
            perturbation: self.perturbation.clone(),
            output: Some(output.clone()),
        };
        Ok(Resolved {
            canonical,
            label: self.case,
            grid: g,
            solver,
            v: coefficients.v,
            g: coefficients.g,
            u0,
            scaling,
            epsilon,
            net,
            perturbation: self.perturbation.clone(),
            formats: output.formats,
            out_dir: output.dir,
        })
    }
}

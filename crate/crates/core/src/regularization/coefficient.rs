use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::mollifier::{periodic_samples, resolution_warning, scaled_mollifier, scaled_mollifier_at};
use super::{Mollifier, ScalingLaw};
use crate::error::{Error, Result};
use crate::spectral::Grid;
use crate::Warning;

/// Smooth nonnegative profiles admitted in coefficient specifications.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
pub enum Profile {
    /// `a · sin²(2π h x / L)`.
    SinSquared { amplitude: f64, harmonic: u32 },
    /// `a · exp(−d²/(2w²))`, `d` the periodic distance to `center`.
    Gaussian { amplitude: f64, center: f64, width: f64 },
    /// Values given directly at the grid points.
    Samples { values: Vec<f64> },
}

impl Profile {
    pub fn validate(&self) -> Result<()> {
        match self {
            Profile::SinSquared { amplitude, .. } => nonnegative("sin_squared amplitude", *amplitude),
            Profile::Gaussian { amplitude, width, .. } => {
                nonnegative("gaussian amplitude", *amplitude)?;
                if !(width.is_finite() && *width > 0.0) {
                    return Err(Error::domain(format!("gaussian width must be > 0, got {width}")));
                }
                Ok(())
            }
            Profile::Samples { values } => {
                values.iter().try_for_each(|&v| nonnegative("profile sample", v))
            }
        }
    }

    pub fn sample(&self, grid: &Grid) -> Result<Vec<f64>> {
        self.validate()?;
        let l = grid.length();
        Ok(match self {
            Profile::SinSquared { amplitude, harmonic } => grid
                .points()
                .map(|x| amplitude * (2.0 * PI * *harmonic as f64 * x / l).sin().powi(2))
                .collect(),
            Profile::Gaussian { amplitude, center, width } => grid
                .points()
                .map(|x| {
                    let d = grid.periodic_offset(x, *center);
                    amplitude * (-0.5 * (d / width).powi(2)).exp()
                })
                .collect(),
            Profile::Samples { values } => {
                if values.len() != grid.len() {
                    return Err(Error::LengthMismatch { expected: grid.len(), actual: values.len() });
                }
                values.clone()
            }
        })
    }
}

/// One additive term of a coefficient.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CoefficientTerm {
    Constant(f64),
    Smooth(Profile),
    Delta { at: f64, strength: f64 },
    /// The `k`-th power of a delta, understood through its regularized
    /// representative `ω^{-k} ψ^k(x/ω)`.
    DeltaPower { at: f64, exponent: u32, strength: f64 },
}

impl CoefficientTerm {
    pub fn is_singular(&self) -> bool {
        matches!(self, CoefficientTerm::Delta { .. } | CoefficientTerm::DeltaPower { .. })
    }
}

/// A coefficient written as a sum of constants, smooth profiles and deltas.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoefficientSpec {
    terms: Vec<CoefficientTerm>,
}

impl CoefficientSpec {
    pub fn new(terms: Vec<CoefficientTerm>) -> Result<Self> {
        let spec = CoefficientSpec { terms };
        spec.validate()?;
        Ok(spec)
    }

    pub fn constant(a: f64) -> Result<Self> {
        Self::new(vec![CoefficientTerm::Constant(a)])
    }

    /// `a + strength·δ(x − at)`.
    pub fn constant_plus_delta(a: f64, at: f64, strength: f64) -> Result<Self> {
        Self::new(vec![CoefficientTerm::Constant(a), CoefficientTerm::Delta { at, strength }])
    }

    pub fn terms(&self) -> &[CoefficientTerm] {
        &self.terms
    }

    /// Checks nonnegativity and term parameters that do not depend on a grid.
    pub fn validate(&self) -> Result<()> {
        for term in &self.terms {
            match term {
                CoefficientTerm::Constant(a) => nonnegative("constant", *a)?,
                CoefficientTerm::Smooth(p) => p.validate()?,
                CoefficientTerm::Delta { at, strength } => {
                    finite("delta location", *at)?;
                    nonnegative("delta strength", *strength)?;
                }
                CoefficientTerm::DeltaPower { at, exponent, strength } => {
                    finite("delta location", *at)?;
                    nonnegative("delta strength", *strength)?;
                    if *exponent < 2 {
                        return Err(Error::domain(format!(
                            "delta power exponent must be >= 2, got {exponent}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Grid-dependent checks: delta locations inside `[0, L)`.
    pub fn validate_on(&self, grid: &Grid) -> Result<()> {
        self.validate()?;
        for term in &self.terms {
            if let CoefficientTerm::Delta { at, .. } | CoefficientTerm::DeltaPower { at, .. } = term {
                if !(*at >= 0.0 && *at < grid.length()) {
                    return Err(Error::domain(format!(
                        "delta location {at} outside [0, {})",
                        grid.length()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_singular(&self) -> bool {
        self.terms.iter().any(CoefficientTerm::is_singular)
    }

    pub fn is_constant_only(&self) -> bool {
        self.terms.iter().all(|t| matches!(t, CoefficientTerm::Constant(_)))
    }

    /// Samples a non-singular spec directly, without mollification.
    pub fn sample_classical(&self, grid: &Arc<Grid>) -> Result<GridCoefficient> {
        self.validate_on(grid)?;
        if self.is_singular() {
            return Err(Error::domain("coefficient contains deltas; no classical sampling exists"));
        }
        let mut values = vec![0.0; grid.len()];
        for term in &self.terms {
            match term {
                CoefficientTerm::Constant(a) => values.iter_mut().for_each(|v| *v += a),
                CoefficientTerm::Smooth(p) => {
                    values.iter_mut().zip(p.sample(grid)?).for_each(|(v, s)| *v += s)
                }
                _ => unreachable!("singular terms rejected above"),
            }
        }
        GridCoefficient::from_values(Arc::clone(grid), values)
    }
}

/// Where a regularized coefficient came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub spec: CoefficientSpec,
    pub epsilon: f64,
    pub omega: f64,
    pub law: ScalingLaw,
}

/// A real nonnegative coefficient sampled on a grid.
#[derive(Debug, Clone)]
pub struct GridCoefficient {
    grid: Arc<Grid>,
    values: Vec<f64>,
    provenance: Option<Provenance>,
    warnings: Vec<Warning>,
}

impl GridCoefficient {
    /// Rejects negative, non-finite, or wrongly sized input.
    pub fn from_values(grid: Arc<Grid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch { expected: grid.len(), actual: values.len() });
        }
        if let Some((j, v)) = values.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::domain(format!(
                "coefficient must be finite and nonnegative; entry {j} is {v}"
            )));
        }
        Ok(GridCoefficient { grid, values, provenance: None, warnings: Vec::new() })
    }

    pub fn constant(grid: Arc<Grid>, a: f64) -> Result<Self> {
        let n = grid.len();
        Self::from_values(grid, vec![a; n])
    }

    pub fn zeros(grid: Arc<Grid>) -> Self {
        let n = grid.len();
        GridCoefficient { grid, values: vec![0.0; n], provenance: None, warnings: Vec::new() }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn warnings(&self) -> &[Warning] {
        &self.warnings
    }

    pub fn linf_norm(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Pointwise `self + c·extra`; the result must stay nonnegative.
    pub fn add_scaled(&self, c: f64, extra: &[f64]) -> Result<Self> {
        if extra.len() != self.values.len() {
            return Err(Error::LengthMismatch { expected: self.values.len(), actual: extra.len() });
        }
        let values = self.values.iter().zip(extra).map(|(v, e)| v + c * e).collect();
        let mut out = Self::from_values(Arc::clone(&self.grid), values)?;
        out.provenance = self.provenance.clone();
        out.warnings = self.warnings.clone();
        Ok(out)
    }

    /// `‖self − other‖_{L^∞}`.
    pub fn linf_distance(&self, other: &GridCoefficient) -> Result<f64> {
        if !self.grid.same_as(&other.grid) {
            return Err(Error::GridMismatch("coefficients on different grids".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

/// Regularizes `spec` with the standard mollifier.
pub fn regularize(
    spec: &CoefficientSpec,
    eps: f64,
    law: ScalingLaw,
    grid: &Arc<Grid>,
) -> Result<GridCoefficient> {
    regularize_with(Mollifier::standard(), spec, eps, law, grid)
}

/// `spec ∗ ψ_ε` on the grid.
///
/// Constants pass through unchanged and smooth profiles are convolved
/// spectrally with the unit-mass sampled kernel. A delta becomes the sampled
/// `a·ψ_ε(x − x₀)` (unit discrete mass, see [`scaled_mollifier_at`]); a delta
/// power uses the closed form `a·ω^{-k} ψ^k((x−x₀)/ω)` as is. Both wrap
/// periodically.
pub fn regularize_with(
    m: &Mollifier,
    spec: &CoefficientSpec,
    eps: f64,
    law: ScalingLaw,
    grid: &Arc<Grid>,
) -> Result<GridCoefficient> {
    spec.validate_on(grid)?;
    let omega = law.omega(eps)?;
    let mut values = vec![0.0; grid.len()];
    let mut kernel_spectrum: Option<Vec<Complex64>> = None;

    for term in spec.terms() {
        match term {
            CoefficientTerm::Constant(a) => values.iter_mut().for_each(|v| *v += a),
            CoefficientTerm::Smooth(p) => {
                let samples = p.sample(grid)?;
                let kernel = kernel_spectrum.get_or_insert_with(|| {
                    let sm = scaled_mollifier(m, eps, law, grid).expect("epsilon checked above");
                    let mut buf: Vec<Complex64> =
                        sm.values.iter().map(|&v| Complex64::new(v * grid.dx(), 0.0)).collect();
                    grid.fft_forward(&mut buf);
                    buf
                });
                let mut buf: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
                grid.fft_forward(&mut buf);
                buf.iter_mut().zip(kernel.iter()).for_each(|(a, b)| *a *= b);
                grid.fft_inverse(&mut buf);
                // circular convolution of nonnegative samples; clamp roundoff only
                values.iter_mut().zip(&buf).for_each(|(v, z)| *v += z.re.max(0.0));
            }
            CoefficientTerm::Delta { at, strength } => {
                let peak = scaled_mollifier_at(m, eps, law, grid, *at)?;
                values.iter_mut().zip(peak.values).for_each(|(v, p)| *v += strength * p);
            }
            CoefficientTerm::DeltaPower { at, exponent, strength } => {
                let k = *exponent as i32;
                let scale = omega.powi(-k);
                let peak = periodic_samples(grid, *at, omega, |y| scale * m.eval(y / omega).powi(k));
                values.iter_mut().zip(peak).for_each(|(v, p)| *v += strength * p);
            }
        }
    }

    let mut out = GridCoefficient::from_values(Arc::clone(grid), values)?;
    if !spec.is_constant_only() {
        out.warnings.extend(resolution_warning(grid, eps, omega));
    }
    out.provenance = Some(Provenance { spec: spec.clone(), epsilon: eps, omega, law });
    Ok(out)
}

fn nonnegative(what: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} must be finite and >= 0, got {v}")))
    }
}

fn finite(what: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} must be finite, got {v}")))
    }
}

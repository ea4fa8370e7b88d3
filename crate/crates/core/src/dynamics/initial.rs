use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::regularization::Profile;
use crate::spectral::{ComplexField, Grid};

const BUMP_CENTER: f64 = 5.0;
const BUMP_RADIUS: f64 = 0.5;

/// `exp(1/((x−5)² + 1/4))` on `|x−5| < 1/2`, zero elsewhere.
///
/// The inner formula tends to `e²` at the edge, so this datum jumps there.
pub fn initial_bump_at(x: f64) -> f64 {
    let d = x - BUMP_CENTER;
    if d.abs() < BUMP_RADIUS {
        (1.0 / (d * d + 0.25)).exp()
    } else {
        0.0
    }
}

/// `exp(−1/(1/4 − (x−5)²))` on `|x−5| < 1/2`; smooth, compactly supported.
pub fn smooth_bump_at(x: f64) -> f64 {
    let d = x - BUMP_CENTER;
    let r = 0.25 - d * d;
    if r > 0.0 {
        (-1.0 / r).exp()
    } else {
        0.0
    }
}

/// [`initial_bump_at`] sampled on the grid points (no periodic wrapping).
pub fn initial_bump(grid: &Arc<Grid>) -> ComplexField {
    ComplexField::from_real_fn(Arc::clone(grid), initial_bump_at)
}

pub fn smooth_bump(grid: &Arc<Grid>) -> ComplexField {
    ComplexField::from_real_fn(Arc::clone(grid), smooth_bump_at)
}

/// Named or inline initial datum.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialData {
    /// The discontinuous bump of [`initial_bump_at`].
    #[default]
    PaperBump,
    SmoothBump,
    /// `amplitude · e^{2πi·mode·x/L}`.
    PlaneWave { mode: i64, amplitude: f64 },
    /// Real-valued profile.
    Profile { profile: Profile },
}

impl InitialData {
    pub fn label(&self) -> &'static str {
        match self {
            InitialData::PaperBump => "paper_bump",
            InitialData::SmoothBump => "smooth_bump",
            InitialData::PlaneWave { .. } => "plane_wave",
            InitialData::Profile { .. } => "profile",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            InitialData::PlaneWave { amplitude, .. } if !amplitude.is_finite() => {
                Err(Error::domain("plane-wave amplitude must be finite"))
            }
            InitialData::Profile { profile } => profile.validate(),
            _ => Ok(()),
        }
    }

    pub fn build(&self, grid: &Arc<Grid>) -> Result<ComplexField> {
        self.validate()?;
        match self {
            InitialData::PaperBump => Ok(initial_bump(grid)),
            InitialData::SmoothBump => Ok(smooth_bump(grid)),
            InitialData::PlaneWave { mode, amplitude } => {
                let k = 2.0 * PI * *mode as f64 / grid.length();
                Ok(ComplexField::from_fn(Arc::clone(grid), |x| Complex64::from_polar(*amplitude, k * x)))
            }
            InitialData::Profile { profile } => {
                let values = profile.sample(grid)?.into_iter().map(|v| Complex64::new(v, 0.0)).collect();
                ComplexField::new(Arc::clone(grid), values)
            }
        }
    }
}

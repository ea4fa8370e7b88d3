use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scale `ω(ε)` of the mollifying net `ψ_ε(x) = ω(ε)^{-1} ψ(x/ω(ε))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ScalingLaw {
    /// `ω(ε) = ε`.
    #[default]
    Power,
    /// `ω(ε) = (log 1/ε)^{-1/N₀}`.
    Log { n0: f64 },
}

impl ScalingLaw {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ScalingLaw::Power => Ok(()),
            ScalingLaw::Log { n0 } if n0.is_finite() && n0 > 0.0 => Ok(()),
            ScalingLaw::Log { n0 } => Err(Error::domain(format!("log scaling needs N0 > 0, got {n0}"))),
        }
    }

    /// Admissible ε: `(0, 1]` for the power law, `(0, 1)` for the log law.
    pub fn check_epsilon(&self, eps: f64) -> Result<()> {
        self.validate()?;
        let ok = match self {
            ScalingLaw::Power => eps > 0.0 && eps <= 1.0,
            ScalingLaw::Log { .. } => eps > 0.0 && eps < 1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("epsilon = {eps} outside the admissible range for {self:?}")))
        }
    }

    pub fn omega(&self, eps: f64) -> Result<f64> {
        self.check_epsilon(eps)?;
        Ok(match *self {
            ScalingLaw::Power => eps,
            ScalingLaw::Log { n0 } => (1.0 / eps).ln().powf(-1.0 / n0),
        })
    }
}

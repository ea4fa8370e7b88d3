use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::regularization::ScalingLaw;

/// Strictly decreasing regularization parameters with their scaling law.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsilonNet {
    values: Vec<f64>,
    #[serde(default)]
    law: ScalingLaw,
}

impl EpsilonNet {
    /// `ε = 1` is admitted under the power law only.
    pub fn new(values: Vec<f64>, law: ScalingLaw) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("epsilon net is empty"));
        }
        for &eps in &values {
            law.check_epsilon(eps)?;
        }
        if let Some(w) = values.windows(2).find(|w| w[1] >= w[0]) {
            return Err(Error::domain(format!(
                "epsilon net must be strictly decreasing; {} is followed by {}",
                w[0], w[1]
            )));
        }
        Ok(EpsilonNet { values, law })
    }

    /// `start · ratio^i` for `i < count`.
    pub fn geometric(start: f64, ratio: f64, count: usize, law: ScalingLaw) -> Result<Self> {
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::domain(format!("geometric ratio must be in (0, 1), got {ratio}")));
        }
        Self::new((0..count).map(|i| start * ratio.powi(i as i32)).collect(), law)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn law(&self) -> ScalingLaw {
        self.law
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn omegas(&self) -> Vec<f64> {
        self.values.iter().map(|&e| self.law.omega(e).expect("checked at construction")).collect()
    }

    /// Re-checks the invariants after deserialization.
    pub fn validate(&self) -> Result<()> {
        Self::new(self.values.clone(), self.law).map(|_| ())
    }
}

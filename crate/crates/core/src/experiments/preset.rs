use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::net::EpsilonNet;
use super::sweep::Problem;
use crate::dynamics::{InitialData, SolverConfig};
use crate::error::{Error, Result};
use crate::regularization::{CoefficientSpec, ScalingLaw};
use crate::spectral::{FractionalOrder, Grid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseLabel {
    Case1,
    Case2,
    Case3,
    Case4,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 4] = [CaseLabel::Case1, CaseLabel::Case2, CaseLabel::Case3, CaseLabel::Case4];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::Case1 => "case1",
            CaseLabel::Case2 => "case2",
            CaseLabel::Case3 => "case3",
            CaseLabel::Case4 => "case4",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseLabel::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::domain(format!("unknown case '{s}', expected one of case1..case4")))
    }
}

/// One of the four coefficient configurations on `[0, 10)` with the
/// singular point at `x₀ = 4.5`.
///
/// | case  | V          | g          |
/// |-------|------------|------------|
/// | case1 | 1          | 1          |
/// | case2 | 1 + δ(x−x₀) | 1          |
/// | case3 | 1          | 1 + δ(x−x₀) |
/// | case4 | 1 + δ(x−x₀) | 1 + δ(x−x₀) |
#[derive(Debug, Clone, PartialEq)]
pub struct CasePreset {
    pub label: CaseLabel,
    pub v: CoefficientSpec,
    pub g: CoefficientSpec,
    pub x0: f64,
    pub length: f64,
    pub final_time: f64,
    pub initial: InitialData,
}

impl CasePreset {
    pub const X0: f64 = 4.5;
    pub const LENGTH: f64 = 10.0;
    pub const FINAL_TIME: f64 = 10.0;
    pub const DEFAULT_N: usize = 4096;
    pub const DEFAULT_DT: f64 = 5e-4;

    pub fn new(label: CaseLabel) -> Self {
        let regular = CoefficientSpec::constant(1.0).expect("valid");
        let singular = CoefficientSpec::constant_plus_delta(1.0, Self::X0, 1.0).expect("valid");
        let (v, g) = match label {
            CaseLabel::Case1 => (regular.clone(), regular),
            CaseLabel::Case2 => (singular, regular),
            CaseLabel::Case3 => (regular, singular),
            CaseLabel::Case4 => (singular.clone(), singular),
        };
        CasePreset {
            label,
            v,
            g,
            x0: Self::X0,
            length: Self::LENGTH,
            final_time: Self::FINAL_TIME,
            initial: InitialData::PaperBump,
        }
    }

    /// `{1.0, 0.7, 0.3, 0.01}`, or `{0.015, 0.01, 0.009, 0.005}` for case3.
    pub fn default_net(&self) -> EpsilonNet {
        let values = match self.label {
            CaseLabel::Case3 => vec![0.015, 0.01, 0.009, 0.005],
            _ => vec![1.0, 0.7, 0.3, 0.01],
        };
        EpsilonNet::new(values, ScalingLaw::Power).expect("valid preset net")
    }

    pub fn has_singular_point(&self) -> bool {
        self.v.is_singular() || self.g.is_singular()
    }

    pub fn problem(&self, n: usize) -> Result<Problem> {
        let grid = Arc::new(Grid::new(self.length, n)?);
        Problem::new(Arc::clone(&grid), self.v.clone(), self.g.clone(), self.initial.build(&grid)?)
    }

    /// `s = 1`, `T = 10`, phase-wrap guard overridden.
    pub fn solver(&self, dt: f64) -> SolverConfig {
        SolverConfig::new(FractionalOrder::new(1.0).expect("valid"), self.final_time, dt).with_phase_wrap(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regularization::CoefficientTerm;

    #[test]
    fn labels_round_trip() {
        for c in CaseLabel::ALL {
            assert_eq!(c.as_str().parse::<CaseLabel>().unwrap(), c);
        }
        assert!("case5".parse::<CaseLabel>().is_err());
    }

    #[test]
    fn preset_specs() {
        let c4 = CasePreset::new(CaseLabel::Case4);
        assert_eq!(
            c4.v.terms(),
            &[CoefficientTerm::Constant(1.0), CoefficientTerm::Delta { at: 4.5, strength: 1.0 }]
        );
        assert_eq!(c4.v, c4.g);
        let c1 = CasePreset::new(CaseLabel::Case1);
        assert!(!c1.has_singular_point());
        assert!(CasePreset::new(CaseLabel::Case3).g.is_singular());
        assert!(!CasePreset::new(CaseLabel::Case3).v.is_singular());
        assert_eq!(CasePreset::new(CaseLabel::Case3).default_net().values()[0], 0.015);
        assert_eq!(c1.default_net().values(), &[1.0, 0.7, 0.3, 0.01]);
    }
}

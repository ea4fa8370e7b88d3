//! Shared inputs for the benchmarks.

use std::sync::Arc;

use fnls_core::dynamics::initial_bump;
use fnls_core::regularization::{regularize, CoefficientSpec, GridCoefficient, ScalingLaw};
use fnls_core::spectral::{ComplexField, Grid};

pub const SIZES: [usize; 3] = [1024, 4096, 16384];

pub fn grid(n: usize) -> Arc<Grid> {
    Arc::new(Grid::new(10.0, n).expect("power-of-two grid"))
}

/// Case-4 coefficients at `ε = 0.3` and the bump datum.
pub fn case4(n: usize) -> (ComplexField, GridCoefficient, GridCoefficient) {
    let g = grid(n);
    let spec = CoefficientSpec::constant_plus_delta(1.0, 4.5, 1.0).expect("valid spec");
    let coef = regularize(&spec, 0.3, ScalingLaw::Power, &g).expect("resolved at 0.3");
    (initial_bump(&g), coef.clone(), coef)
}

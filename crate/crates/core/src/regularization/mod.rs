//! Friedrichs mollifiers, scaling nets and the regularization of
//! distributional coefficients, plus the exponent fitters used to read
//! moderateness and negligibility off a finite ε-net.

mod coefficient;
mod fit;
mod mollifier;
mod scaling;

pub use coefficient::{
    regularize, regularize_with, CoefficientSpec, CoefficientTerm, GridCoefficient, Profile,
    Provenance,
};
pub use fit::{fit_log_log, fit_moderateness, fit_negligibility, NegligibilityFit, PowerFit};
pub use mollifier::{scaled_mollifier, scaled_mollifier_at, Mollifier, ScaledMollifier};
pub use scaling::ScalingLaw;

/// Mollifier support radius, in grid spacings, below which results are
/// flagged as under-resolved.
pub const RESOLUTION_SPACINGS: f64 = 4.0;

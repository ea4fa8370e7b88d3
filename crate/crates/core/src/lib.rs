//! Pseudospectral simulation of the cubic fractional nonlinear Schrödinger
//! equation
//!
//! ```text
//! i ∂ₜu = (−Δ)ˢu + V u + g |u|² u,   x ∈ [0, L) periodic,
//! ```
//!
//! with coefficients `V`, `g` that may contain Dirac deltas and their powers.
//! Singular coefficients are regularized by convolution with a scaled
//! Friedrichs mollifier, the regularized problems are integrated by Strang
//! splitting, and the resulting ε-nets are examined for moderateness,
//! negligibility and convergence to the classical solution.

pub mod diagnostics;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod regularization;
pub mod spectral;
mod warning;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use warning::Warning;

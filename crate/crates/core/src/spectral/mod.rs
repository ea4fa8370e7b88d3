//! Periodic grid, discrete Fourier transform and the fractional Laplacian.
//!
//! Transform convention: the forward transform is the unnormalized DFT
//! `f̂_j = Σ_m f_m e^{-2πi jm/n}` and the inverse carries the `1/n`. With
//! this choice Parseval reads `Σ|f̂_j|² · L/n² = Σ|f_m|² · dx`, so every
//! spectral quadrature in the crate uses the weight [`Grid::spectral_weight`]
//! `= L/n²`.

mod field;
mod grid;
mod norms;
mod operators;

pub use field::{transform, ComplexField};
pub use grid::{FractionalOrder, Grid};
pub use norms::{hs_norm, lp_norm, lp_norm_of, spectral_l2_norm, LpExponent};
pub use operators::{
    dealias_two_thirds, fractional_laplacian, fractional_laplacian_raw, half_laplacian,
    symbol_multiply,
};

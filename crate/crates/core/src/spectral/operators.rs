use num_complex::Complex64;

use super::{ComplexField, FractionalOrder};
use crate::error::Result;

/// Multiplies the spectrum of `f` pointwise by `symbol(k_j)`.
pub fn symbol_multiply(f: &ComplexField, symbol: impl Fn(f64) -> Complex64) -> ComplexField {
    let grid = f.grid();
    let spectrum: Vec<Complex64> = f
        .spectrum()
        .iter()
        .zip(grid.wavenumbers())
        .map(|(&z, &k)| z * symbol(k))
        .collect();
    // lengths agree by construction
    ComplexField::from_spectrum(std::sync::Arc::clone(grid), spectrum).expect("spectrum length")
}

/// `|k|^p` with the zero mode mapped to 0 for every `p > 0`.
pub(crate) fn abs_power(k: f64, p: f64) -> f64 {
    if k == 0.0 {
        0.0
    } else {
        k.abs().powf(p)
    }
}

/// `(−Δ)^s f`: Fourier multiplier with symbol `|k|^{2s}`.
pub fn fractional_laplacian(f: &ComplexField, order: FractionalOrder) -> ComplexField {
    let p = 2.0 * order.s();
    symbol_multiply(f, |k| Complex64::new(abs_power(k, p), 0.0))
}

/// `(−Δ)^{s/2} f`: Fourier multiplier with symbol `|k|^s`.
pub fn half_laplacian(f: &ComplexField, order: FractionalOrder) -> ComplexField {
    let p = order.s();
    symbol_multiply(f, |k| Complex64::new(abs_power(k, p), 0.0))
}

/// Convenience wrapper taking a raw exponent; rejects `s <= 0`.
pub fn fractional_laplacian_raw(f: &ComplexField, s: f64) -> Result<ComplexField> {
    Ok(fractional_laplacian(f, FractionalOrder::new(s)?))
}

/// Zeroes every mode with `|j̃| > n/3` (2/3 rule).
pub fn dealias_two_thirds(spectrum: &mut [Complex64]) {
    let n = spectrum.len() as i64;
    let cutoff = n / 3;
    for (j, z) in spectrum.iter_mut().enumerate() {
        let idx = if (j as i64) < n / 2 { j as i64 } else { j as i64 - n };
        if idx.abs() > cutoff {
            *z = Complex64::new(0.0, 0.0);
        }
    }
}

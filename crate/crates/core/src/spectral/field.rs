use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use super::Grid;
use crate::error::{Error, Result};

/// Complex samples of a function on a periodic grid.
///
/// The spectrum is computed lazily on first request and cached; the cache is
/// write-once, so a field can be shared across threads.
#[derive(Debug, Clone)]
pub struct ComplexField {
    grid: Arc<Grid>,
    values: Vec<Complex64>,
    spectrum: OnceLock<Vec<Complex64>>,
}

impl ComplexField {
    pub fn new(grid: Arc<Grid>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch { expected: grid.len(), actual: values.len() });
        }
        Ok(ComplexField { grid, values, spectrum: OnceLock::new() })
    }

    pub fn zeros(grid: Arc<Grid>) -> Self {
        let n = grid.len();
        ComplexField { grid, values: vec![Complex64::new(0.0, 0.0); n], spectrum: OnceLock::new() }
    }

    pub fn from_fn(grid: Arc<Grid>, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.points().map(f).collect();
        ComplexField { grid, values, spectrum: OnceLock::new() }
    }

    pub fn from_real_fn(grid: Arc<Grid>, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    /// Builds a field from its spectrum (inverse transform).
    pub fn from_spectrum(grid: Arc<Grid>, spectrum: Vec<Complex64>) -> Result<Self> {
        if spectrum.len() != grid.len() {
            return Err(Error::LengthMismatch { expected: grid.len(), actual: spectrum.len() });
        }
        let mut values = spectrum.clone();
        grid.fft_inverse(&mut values);
        let cache = OnceLock::new();
        let _ = cache.set(spectrum);
        Ok(ComplexField { grid, values, spectrum: cache })
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Forward transform (unnormalized DFT), cached after the first call.
    pub fn spectrum(&self) -> &[Complex64] {
        self.spectrum.get_or_init(|| {
            let mut buf = self.values.clone();
            self.grid.fft_forward(&mut buf);
            buf
        })
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        ComplexField {
            grid: Arc::clone(&self.grid),
            values: self.values.iter().map(|&z| f(z)).collect(),
            spectrum: OnceLock::new(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|z| z * c)
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    /// `a·self + b·other`.
    pub fn axpby(&self, a: Complex64, other: &ComplexField, b: Complex64) -> Result<Self> {
        self.check_same_grid(other)?;
        Ok(ComplexField {
            grid: Arc::clone(&self.grid),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&u, &v)| a * u + b * v)
                .collect(),
            spectrum: OnceLock::new(),
        })
    }

    pub fn sub(&self, other: &ComplexField) -> Result<Self> {
        self.axpby(Complex64::new(1.0, 0.0), other, Complex64::new(-1.0, 0.0))
    }

    /// Discrete `L²` inner product `Σ f_j conj(g_j) dx`.
    pub fn inner(&self, other: &ComplexField) -> Result<Complex64> {
        self.check_same_grid(other)?;
        let sum: Complex64 = self.values.iter().zip(&other.values).map(|(f, g)| f * g.conj()).sum();
        Ok(sum * self.grid.dx())
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub(crate) fn check_same_grid(&self, other: &ComplexField) -> Result<()> {
        if Arc::ptr_eq(&self.grid, &other.grid) || self.grid.same_as(&other.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!("{:?} vs {:?}", self.grid, other.grid)))
        }
    }
}

/// Forward transform of a field, as a fresh vector.
pub fn transform(f: &ComplexField) -> Vec<Complex64> {
    f.spectrum().to_vec()
}

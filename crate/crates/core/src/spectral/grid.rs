use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Uniform periodic grid on `[0, L)` with `n` points, `n` a power of two.
///
/// Wavenumbers are stored in FFT order: index `j` carries the signed
/// frequency `j` for `j < n/2` and `j - n` otherwise, so the Nyquist entry
/// is `-n/2`. The symbol `|k|^{2s}` is even, so the Nyquist mode needs no
/// special treatment.
#[derive(Clone)]
pub struct Grid {
    length: f64,
    n: usize,
    dx: f64,
    wavenumbers: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Grid {
    pub fn new(length: f64, n: usize) -> Result<Self> {
        let wavenumbers = (0..n)
            .map(|j| 2.0 * PI * signed_index(j, n) as f64 / length)
            .collect();
        Self::with_wavenumbers(length, n, wavenumbers)
    }

    /// Builds a grid with an explicit wavenumber table.
    ///
    /// Only meant for fault-injection tests; [`Grid::new`] is the right
    /// constructor for everything else.
    #[doc(hidden)]
    pub fn with_wavenumbers(length: f64, n: usize, wavenumbers: Vec<f64>) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::domain(format!("grid length must be positive, got {length}")));
        }
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::domain(format!(
                "grid size must be a power of two >= 8, got {n}"
            )));
        }
        if wavenumbers.len() != n {
            return Err(Error::LengthMismatch { expected: n, actual: wavenumbers.len() });
        }
        let mut planner = FftPlanner::new();
        Ok(Grid {
            length,
            n,
            dx: length / n as f64,
            wavenumbers,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Quadrature weight of the spectral sums, `L / n²`.
    pub fn spectral_weight(&self) -> f64 {
        self.length / (self.n as f64 * self.n as f64)
    }

    pub fn wavenumbers(&self) -> &[f64] {
        &self.wavenumbers
    }

    pub fn point(&self, j: usize) -> f64 {
        j as f64 * self.dx
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n).map(move |j| self.point(j))
    }

    /// Signed frequency index of storage slot `j`.
    pub fn frequency_index(&self, j: usize) -> i64 {
        signed_index(j, self.n)
    }

    /// Index of the grid point nearest to `x` (periodically wrapped).
    pub fn nearest_index(&self, x: f64) -> usize {
        let j = (x.rem_euclid(self.length) / self.dx).round() as usize;
        j % self.n
    }

    /// Signed distance from `x0` to `x` on the circle, in `[-L/2, L/2)`.
    pub fn periodic_offset(&self, x: f64, x0: f64) -> f64 {
        let half = 0.5 * self.length;
        (x - x0 + half).rem_euclid(self.length) - half
    }

    /// Largest value of the symbol `|k|^{2s}` on this grid.
    pub fn max_symbol(&self, s: f64) -> f64 {
        self.wavenumbers
            .iter()
            .map(|k| k.abs().powf(2.0 * s))
            .fold(0.0, f64::max)
    }

    pub(crate) fn fft_forward(&self, buf: &mut [Complex64]) {
        self.forward.process(buf);
    }

    /// Inverse transform including the `1/n`.
    pub(crate) fn fft_inverse(&self, buf: &mut [Complex64]) {
        self.inverse.process(buf);
        let scale = 1.0 / self.n as f64;
        buf.iter_mut().for_each(|z| *z *= scale);
    }

    /// Grids are interchangeable when they describe the same box and
    /// resolution.
    pub fn same_as(&self, other: &Grid) -> bool {
        self.n == other.n && self.length == other.length && self.wavenumbers == other.wavenumbers
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid")
            .field("length", &self.length)
            .field("n", &self.n)
            .field("dx", &self.dx)
            .finish()
    }
}

fn signed_index(j: usize, n: usize) -> i64 {
    if j < n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

/// Fractional power `s` of the Laplacian, in one space dimension.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FractionalOrder {
    s: f64,
}

impl FractionalOrder {
    pub const DIMENSION: u32 = 1;

    pub fn new(s: f64) -> Result<Self> {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::domain(format!("fractional order must be > 0, got {s}")));
        }
        Ok(FractionalOrder { s })
    }

    /// Order admissible for the well-posedness experiments, which need
    /// `s > d/2`.
    pub fn for_experiments(s: f64) -> Result<Self> {
        let order = Self::new(s)?;
        if s <= 0.5 * Self::DIMENSION as f64 {
            return Err(Error::domain(format!(
                "experiments require s > d/2 = 0.5, got s = {s}"
            )));
        }
        Ok(order)
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn dimension(&self) -> u32 {
        Self::DIMENSION
    }
}

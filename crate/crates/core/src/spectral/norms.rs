use num_complex::Complex64;

use super::operators::abs_power;
use super::{ComplexField, FractionalOrder};
use crate::error::{Error, Result};

/// Lebesgue exponents supported by [`lp_norm`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpExponent {
    Two,
    Four,
    Six,
    Infinity,
}

impl LpExponent {
    pub fn value(self) -> f64 {
        match self {
            LpExponent::Two => 2.0,
            LpExponent::Four => 4.0,
            LpExponent::Six => 6.0,
            LpExponent::Infinity => f64::INFINITY,
        }
    }
}

impl TryFrom<f64> for LpExponent {
    type Error = Error;

    fn try_from(p: f64) -> Result<Self> {
        [LpExponent::Two, LpExponent::Four, LpExponent::Six, LpExponent::Infinity]
            .into_iter()
            .find(|e| e.value() == p)
            .ok_or_else(|| Error::domain(format!("unsupported Lebesgue exponent p = {p}")))
    }
}

/// `(Σ|f_j|^p dx)^{1/p}`, or `max|f_j|` for `p = ∞`.
pub fn lp_norm(f: &ComplexField, p: LpExponent) -> f64 {
    lp_norm_of(f.values(), f.grid().dx(), p.value())
}

/// Rectangle-rule `L^p` norm of raw samples for any `p >= 1`.
pub fn lp_norm_of(values: &[Complex64], dx: f64, p: f64) -> f64 {
    if p.is_infinite() {
        return values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    }
    let sum: f64 = if p == 2.0 {
        values.iter().map(|z| z.norm_sqr()).sum()
    } else if p == 4.0 {
        values.iter().map(|z| z.norm_sqr() * z.norm_sqr()).sum()
    } else {
        values.iter().map(|z| z.norm().powf(p)).sum()
    };
    (sum * dx).powf(1.0 / p)
}

/// `L²` norm evaluated on the spectral side, `(Σ|f̂_j|² L/n²)^{1/2}`.
pub fn spectral_l2_norm(f: &ComplexField) -> f64 {
    let w = f.grid().spectral_weight();
    (f.spectrum().iter().map(|z| z.norm_sqr()).sum::<f64>() * w).sqrt()
}

/// `‖f‖_{H^s} = (Σ(1+|k_j|^{2s})|f̂_j|² L/n²)^{1/2}`.
pub fn hs_norm(f: &ComplexField, order: FractionalOrder) -> f64 {
    let grid = f.grid();
    let p = 2.0 * order.s();
    let sum: f64 = f
        .spectrum()
        .iter()
        .zip(grid.wavenumbers())
        .map(|(z, &k)| (1.0 + abs_power(k, p)) * z.norm_sqr())
        .sum();
    (sum * grid.spectral_weight()).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{half_laplacian, Grid};
    use std::f64::consts::PI;
    use std::sync::Arc;

    #[test]
    fn constant_norms() {
        let l = 10.0;
        let g = Arc::new(Grid::new(l, 64).unwrap());
        let c = Complex64::new(-1.5, 2.0);
        let f = ComplexField::from_fn(g, |_| c);
        assert!((lp_norm(&f, LpExponent::Two) - c.norm() * l.sqrt()).abs() < 1e-13);
        assert!((lp_norm(&f, LpExponent::Infinity) - c.norm()).abs() < 1e-15);
        for s in [0.3, 1.0, 2.0] {
            let hs = hs_norm(&f, FractionalOrder::new(s).unwrap());
            assert!((hs - c.norm() * l.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn unsupported_exponent() {
        assert!(LpExponent::try_from(3.0).is_err());
        assert!(LpExponent::try_from(1.0).is_err());
        assert_eq!(LpExponent::try_from(6.0).unwrap(), LpExponent::Six);
        assert_eq!(LpExponent::try_from(f64::INFINITY).unwrap(), LpExponent::Infinity);
    }

    #[test]
    fn hs_norm_single_mode() {
        let g = Arc::new(Grid::new(2.0 * PI, 32).unwrap());
        let f = ComplexField::from_fn(g, |x| Complex64::from_polar(1.0, 2.0 * x));
        let hs = hs_norm(&f, FractionalOrder::new(1.0).unwrap());
        let expected = 5f64.sqrt() * (2.0 * PI).sqrt();
        assert!((hs - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn hs_norm_is_quadratic_sum_form() {
        let g = Arc::new(Grid::new(10.0, 128).unwrap());
        let f = ComplexField::from_fn(g, |x| {
            Complex64::new((-(x - 5.0).powi(2)).exp(), (0.3 * x).sin() * (-(x - 4.0).powi(2)).exp())
        });
        for s in [0.6, 1.0, 1.7] {
            let order = FractionalOrder::new(s).unwrap();
            let a = lp_norm(&f, LpExponent::Two);
            let b = lp_norm(&half_laplacian(&f, order), LpExponent::Two);
            let hs = hs_norm(&f, order);
            assert!((hs - (a * a + b * b).sqrt()).abs() < 1e-12 * hs);
        }
    }
}

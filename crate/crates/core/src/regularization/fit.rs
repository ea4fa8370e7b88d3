use serde::Serialize;

use super::ScalingLaw;
use crate::error::{Error, Result};

/// Norms at or below this are treated as exact zeros.
pub const ZERO_NORM: f64 = 1e-300;

/// Least-squares line through `(ln x, ln y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerFit {
    pub exponent: f64,
    pub intercept: f64,
    /// Root-mean-square of the log residuals.
    pub residual: f64,
}

/// Fitted negligibility rate; `rate` is `+∞` for a net of exact zeros.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NegligibilityFit {
    pub rate: f64,
    pub residual: f64,
}

impl NegligibilityFit {
    pub fn is_zero_net(&self) -> bool {
        self.rate == f64::INFINITY
    }
}

fn check_pairs(pairs: &[(f64, f64)]) -> Result<()> {
    if pairs.len() < 3 {
        return Err(Error::domain(format!("exponent fit needs at least 3 points, got {}", pairs.len())));
    }
    for (i, &(x, _)) in pairs.iter().enumerate() {
        if pairs[..i].iter().any(|&(y, _)| y == x) {
            return Err(Error::domain(format!("duplicate abscissa {x} in exponent fit")));
        }
    }
    Ok(())
}

/// Slope of `ln y` against `ln x`, for positive data.
pub fn fit_log_log(pairs: &[(f64, f64)]) -> Result<PowerFit> {
    check_pairs(pairs)?;
    if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite())) {
        return Err(Error::domain(format!("log-log fit needs positive finite data, got ({x}, {y})")));
    }
    let xs: Vec<f64> = pairs.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = pairs.iter().map(|p| p.1.ln()).collect();
    let m = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / m;
    let ybar = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - xbar).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum();
    if sxx == 0.0 {
        return Err(Error::domain("degenerate abscissae in log-log fit"));
    }
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let rss: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    Ok(PowerFit { exponent: slope, intercept, residual: (rss / m).sqrt() })
}

/// Fits `‖f_ε‖ ≈ C ω(ε)^{−N}` and returns `N̂`.
pub fn fit_moderateness(pairs: &[(f64, f64)], law: ScalingLaw) -> Result<PowerFit> {
    check_pairs(pairs)?;
    let scaled = pairs
        .iter()
        .map(|&(eps, norm)| Ok((law.omega(eps)?, norm)))
        .collect::<Result<Vec<_>>>()?;
    let fit = fit_log_log(&scaled)?;
    Ok(PowerFit { exponent: -fit.exponent, ..fit })
}

/// Fits `‖f_ε‖ ≈ C ε^k` and returns `k̂`.
///
/// A net that is identically zero (every norm `<= 1e-300`) yields the `+∞`
/// sentinel. Mixed nets fit only their nonzero entries.
pub fn fit_negligibility(pairs: &[(f64, f64)]) -> Result<NegligibilityFit> {
    check_pairs(pairs)?;
    if let Some(&(_, n)) = pairs.iter().find(|&&(_, n)| n.is_nan() || n < 0.0) {
        return Err(Error::domain(format!("negative or NaN norm {n} in negligibility fit")));
    }
    if pairs.iter().all(|&(_, n)| n <= ZERO_NORM) {
        return Ok(NegligibilityFit { rate: f64::INFINITY, residual: 0.0 });
    }
    let nonzero: Vec<(f64, f64)> = pairs.iter().copied().filter(|&(_, n)| n > ZERO_NORM).collect();
    let fit = fit_log_log(&nonzero)?;
    Ok(NegligibilityFit { rate: fit.exponent, residual: fit.residual })
}

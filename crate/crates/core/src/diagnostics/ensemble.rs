use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::inequalities::{check_gns, GnsParams};
use crate::error::{Error, Result};
use crate::spectral::{ComplexField, Grid};

/// Random field with i.i.d. complex Gaussian coefficients on the modes
/// `1 ≤ |j| ≤ bandwidth` and nothing elsewhere (zero mean).
pub fn random_band_limited<R: Rng + ?Sized>(
    grid: &Arc<Grid>,
    bandwidth: usize,
    rng: &mut R,
) -> Result<ComplexField> {
    let n = grid.len();
    if bandwidth == 0 || bandwidth >= n / 2 {
        return Err(Error::domain(format!(
            "bandwidth must be in 1..{}, got {bandwidth}",
            n / 2
        )));
    }
    let mut spectrum = vec![Complex64::new(0.0, 0.0); n];
    for j in 1..=bandwidth {
        for slot in [j, n - j] {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            spectrum[slot] = Complex64::new(re, im);
        }
    }
    ComplexField::from_spectrum(Arc::clone(grid), spectrum)
}

/// Ratio statistics of the GNS witness over a random ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnsembleSummary {
    pub count: usize,
    pub seed: u64,
    pub max_ratio: f64,
    pub mean_ratio: f64,
    pub min_ratio: f64,
}

/// Draws `count` band-limited fields from a ChaCha8 stream seeded with `seed`
/// and summarizes `lhs / rhs` of the GNS inequality.
pub fn gns_ensemble(
    grid: &Arc<Grid>,
    params: &GnsParams,
    count: usize,
    seed: u64,
    bandwidth: usize,
) -> Result<EnsembleSummary> {
    if count == 0 {
        return Err(Error::domain("ensemble needs at least one field"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ratios = Vec::with_capacity(count);
    for _ in 0..count {
        let u = random_band_limited(grid, bandwidth, &mut rng)?;
        let w = check_gns(&u, params)?;
        ratios.push(w.ratio.ok_or_else(|| Error::domain("degenerate ensemble member"))?);
    }
    Ok(EnsembleSummary {
        count,
        seed,
        max_ratio: ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        mean_ratio: ratios.iter().sum::<f64>() / count as f64,
        min_ratio: ratios.iter().copied().fold(f64::INFINITY, f64::min),
    })
}

use serde::Serialize;

use crate::error::{Error, Result};
use crate::regularization::GridCoefficient;
use crate::spectral::{lp_norm, ComplexField, FractionalOrder, LpExponent};

/// `‖u‖_{L²}`, whose conservation is the first conservation law.
pub fn mass(u: &ComplexField) -> f64 {
    lp_norm(u, LpExponent::Two)
}

/// `H = ‖(−Δ)^{s/2}u‖² + ‖V^{1/2}u‖² + ½‖g^{1/4}u‖⁴_{L⁴}`, split by part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Hamiltonian {
    pub kinetic: f64,
    pub potential: f64,
    pub interaction: f64,
    pub total: f64,
}

impl Hamiltonian {
    fn from_parts(kinetic: f64, potential: f64, interaction: f64) -> Self {
        Hamiltonian { kinetic, potential, interaction, total: kinetic + potential + interaction }
    }
}

pub(super) fn check_coefficient(u: &ComplexField, c: &GridCoefficient, name: &str) -> Result<()> {
    if u.grid().same_as(c.grid()) {
        Ok(())
    } else {
        Err(Error::GridMismatch(format!("{name} lives on a different grid than the field")))
    }
}

/// Evaluates the Hamiltonian with a spectral kinetic term and rectangle-rule
/// potential and interaction terms.
///
/// `V` and `g` are [`GridCoefficient`]s, which cannot hold negative entries.
pub fn hamiltonian(
    u: &ComplexField,
    v: &GridCoefficient,
    g: &GridCoefficient,
    order: FractionalOrder,
) -> Result<Hamiltonian> {
    check_coefficient(u, v, "V")?;
    check_coefficient(u, g, "g")?;
    let grid = u.grid();
    let p = 2.0 * order.s();
    let kinetic: f64 = u
        .spectrum()
        .iter()
        .zip(grid.wavenumbers())
        .filter(|(_, &k)| k != 0.0)
        .map(|(z, &k)| k.abs().powf(p) * z.norm_sqr())
        .sum::<f64>()
        * grid.spectral_weight();
    let dx = grid.dx();
    let (mut potential, mut interaction) = (0.0, 0.0);
    for ((z, &vj), &gj) in u.values().iter().zip(v.values()).zip(g.values()) {
        let rho = z.norm_sqr();
        potential += vj * rho;
        interaction += gj * rho * rho;
    }
    Ok(Hamiltonian::from_parts(kinetic, potential * dx, 0.5 * interaction * dx))
}

/// `‖V^{1/2}u‖_{L²}` and `‖g^{1/4}u‖_{L⁴}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightedNorms {
    pub potential_l2: f64,
    pub interaction_l4: f64,
}

pub fn weighted_norms(u: &ComplexField, v: &GridCoefficient, g: &GridCoefficient) -> Result<WeightedNorms> {
    check_coefficient(u, v, "V")?;
    check_coefficient(u, g, "g")?;
    let dx = u.grid().dx();
    let (mut a, mut b) = (0.0, 0.0);
    for ((z, &vj), &gj) in u.values().iter().zip(v.values()).zip(g.values()) {
        let rho = z.norm_sqr();
        a += vj * rho;
        b += gj * rho * rho;
    }
    Ok(WeightedNorms { potential_l2: (a * dx).sqrt(), interaction_l4: (b * dx).powf(0.25) })
}

use std::sync::Arc;

use num_complex::Complex64;

use super::config::Integrator;
use crate::error::{Error, Result};
use crate::regularization::GridCoefficient;
use crate::spectral::{dealias_two_thirds, ComplexField, FractionalOrder, Grid};

/// Field and coefficients at one instant of a run.
#[derive(Debug, Clone)]
pub struct RunState {
    t: f64,
    field: ComplexField,
    v: Arc<GridCoefficient>,
    g: Arc<GridCoefficient>,
    step_count: u64,
}

impl RunState {
    pub fn new(field: ComplexField, v: Arc<GridCoefficient>, g: Arc<GridCoefficient>) -> Result<Self> {
        check_grids(field.grid(), &v, &g)?;
        Ok(RunState { t: 0.0, field, v, g, step_count: 0 })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn field(&self) -> &ComplexField {
        &self.field
    }

    pub fn v(&self) -> &GridCoefficient {
        &self.v
    }

    pub fn g(&self) -> &GridCoefficient {
        &self.g
    }

    pub fn step_count(&self) -> u64 {
        self.step_count
    }
}

pub(crate) fn check_grids(grid: &Grid, v: &GridCoefficient, g: &GridCoefficient) -> Result<()> {
    if !grid.same_as(v.grid()) {
        return Err(Error::GridMismatch("V lives on a different grid than the initial field".into()));
    }
    if !grid.same_as(g.grid()) {
        return Err(Error::GridMismatch("g lives on a different grid than the initial field".into()));
    }
    Ok(())
}

/// `u_j ← u_j · exp(−iτ(V_j + g_j|u_j|²))`.
pub(crate) fn potential_in_place(values: &mut [Complex64], v: &[f64], g: &[f64], tau: f64) {
    for ((z, &vj), &gj) in values.iter_mut().zip(v).zip(g) {
        let (sin, cos) = (-tau * (vj + gj * z.norm_sqr())).sin_cos();
        *z *= Complex64::new(cos, sin);
    }
}

/// `exp(−iτ|k_j|^{2s})` in FFT order.
pub(crate) fn kinetic_phases(grid: &Grid, order: FractionalOrder, tau: f64) -> Vec<Complex64> {
    let p = 2.0 * order.s();
    grid.wavenumbers()
        .iter()
        .map(|&k| {
            let symbol = if k == 0.0 { 0.0 } else { k.abs().powf(p) };
            Complex64::from_polar(1.0, -tau * symbol)
        })
        .collect()
}

/// Exact solution of `iu_t = Vu + g|u|²u` over `dt`; `|u_j|` is constant
/// along this flow, so the phase is explicit.
pub fn potential_flow(state: &RunState, dt: f64) -> ComplexField {
    let mut values = state.field.values().to_vec();
    potential_in_place(&mut values, state.v.values(), state.g.values(), dt);
    ComplexField::new(Arc::clone(state.field.grid()), values).expect("length preserved")
}

/// Exact solution of `iu_t = (−Δ)^s u` over `dt`.
pub fn kinetic_flow(field: &ComplexField, order: FractionalOrder, dt: f64) -> ComplexField {
    let grid = field.grid();
    let phases = kinetic_phases(grid, order, dt);
    let spectrum: Vec<Complex64> = field.spectrum().iter().zip(&phases).map(|(a, b)| a * b).collect();
    ComplexField::from_spectrum(Arc::clone(grid), spectrum).expect("length preserved")
}

/// One step of a fixed-`dt` splitting, reusable across steps.
#[derive(Debug, Clone)]
pub(crate) struct Propagator {
    grid: Arc<Grid>,
    dt: f64,
    integrator: Integrator,
    kinetic: Vec<Complex64>,
    dealias: bool,
}

impl Propagator {
    pub(crate) fn new(grid: Arc<Grid>, order: FractionalOrder, dt: f64, integrator: Integrator, dealias: bool) -> Self {
        let kinetic = kinetic_phases(&grid, order, dt);
        Propagator { grid, dt, integrator, kinetic, dealias }
    }

    fn kinetic_in_place(&self, values: &mut [Complex64]) {
        self.grid.fft_forward(values);
        values.iter_mut().zip(&self.kinetic).for_each(|(z, p)| *z *= p);
        if self.dealias {
            dealias_two_thirds(values);
        }
        self.grid.fft_inverse(values);
    }

    /// Advances `values` by one step; errors if any entry stops being finite.
    pub(crate) fn step(&self, values: &mut [Complex64], v: &[f64], g: &[f64], step_index: u64) -> Result<()> {
        match self.integrator {
            Integrator::Strang => {
                potential_in_place(values, v, g, 0.5 * self.dt);
                self.kinetic_in_place(values);
                potential_in_place(values, v, g, 0.5 * self.dt);
            }
            Integrator::Lie => {
                potential_in_place(values, v, g, self.dt);
                self.kinetic_in_place(values);
            }
        }
        if values.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(())
        } else {
            Err(Error::NumericalBlowup { step: step_index })
        }
    }
}

fn advance(state: &RunState, order: FractionalOrder, dt: f64, integrator: Integrator) -> Result<RunState> {
    let grid = Arc::clone(state.field.grid());
    let prop = Propagator::new(Arc::clone(&grid), order, dt, integrator, false);
    let mut values = state.field.values().to_vec();
    prop.step(&mut values, state.v.values(), state.g.values(), state.step_count + 1)?;
    Ok(RunState {
        t: (state.step_count + 1) as f64 * dt,
        field: ComplexField::new(grid, values)?,
        v: Arc::clone(&state.v),
        g: Arc::clone(&state.g),
        step_count: state.step_count + 1,
    })
}

/// `P(dt/2) ∘ K(dt) ∘ P(dt/2)`.
pub fn strang_step(state: &RunState, order: FractionalOrder, dt: f64) -> Result<RunState> {
    advance(state, order, dt, Integrator::Strang)
}

/// `K(dt) ∘ P(dt)`.
pub fn lie_step(state: &RunState, order: FractionalOrder, dt: f64) -> Result<RunState> {
    advance(state, order, dt, Integrator::Lie)
}

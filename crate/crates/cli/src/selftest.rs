//! Fast invariant battery behind `fnls selftest`.
//!
//! The report is a pure function of the build: no timings, no paths.

use std::f64::consts::PI;
use std::sync::Arc;

use fnls_core::diagnostics::mass;
use fnls_core::dynamics::{initial_bump, run, SolverConfig};
use fnls_core::regularization::{
    fit_moderateness, regularize, scaled_mollifier, CoefficientSpec, GridCoefficient, Mollifier, ScalingLaw,
};
use fnls_core::spectral::{fractional_laplacian, ComplexField, FractionalOrder, Grid};
use fnls_core::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &'static str, pass: bool, detail: String) -> Self {
        CheckResult { name, pass, detail }
    }

    pub fn line(&self) -> String {
        format!("{} {}: {}", if self.pass { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

/// Grid used by the eigenfunction check: `L = 2π`, 64 points.
pub fn eigen_grid() -> Arc<Grid> {
    Arc::new(Grid::new(2.0 * PI, 64).expect("valid grid"))
}

/// `e^{2ix}` against `|2|^{2s} e^{2ix}` for `s = 1` and `s = 0.75`.
pub fn eigenfunction_check(grid: &Arc<Grid>) -> CheckResult {
    let f = ComplexField::from_fn(Arc::clone(grid), |x| Complex64::from_polar(1.0, 2.0 * x));
    let mut worst: f64 = 0.0;
    for s in [1.0, 0.75] {
        let lambda = 2f64.powf(2.0 * s);
        let out = fractional_laplacian(&f, FractionalOrder::new(s).expect("valid order"));
        let err = out.values().iter().zip(f.values()).map(|(a, b)| (a - b * lambda).norm()).fold(0.0, f64::max);
        worst = worst.max(err / lambda);
    }
    CheckResult::new("plane-wave eigenfunction", worst <= 1e-11, format!("relative error {worst:.3e} (tol 1e-11)"))
}

fn mass_check() -> CheckResult {
    let grid = Arc::new(Grid::new(10.0, 256).expect("valid grid"));
    let v = CoefficientSpec::constant_plus_delta(1.0, 4.5, 1.0).expect("valid spec");
    let v = regularize(&v, 0.5, ScalingLaw::Power, &grid).expect("resolved");
    let g = GridCoefficient::constant(Arc::clone(&grid), 1.0).expect("valid");
    let cfg = SolverConfig::new(FractionalOrder::new(1.0).expect("valid"), 0.05, 5e-4).with_stride(100);
    let outcome = run(&cfg, &initial_bump(&grid), &v, &g);
    match outcome {
        Ok(rec) => {
            let drift = rec.mass_drift();
            CheckResult::new(
                "mass conservation (100 steps)",
                rec.steps == 100 && drift <= 1e-12,
                format!("relative drift {drift:.3e} over {} steps (tol 1e-12)", rec.steps),
            )
        }
        Err(e) => CheckResult::new("mass conservation (100 steps)", false, e.to_string()),
    }
}

fn mollifier_check() -> CheckResult {
    let grid = Arc::new(Grid::new(10.0, 1024).expect("valid grid"));
    let m = Mollifier::new();
    let c = m.normalization();
    let sm = scaled_mollifier(&m, 0.5, ScalingLaw::Power, &grid).expect("resolved");
    let err = (sm.integral() - 1.0).abs();
    let field = ComplexField::from_real_fn(Arc::clone(&grid), |_| 1.0);
    let pass = err <= 1e-12 && (c - 2.2523).abs() <= 1e-3 && (mass(&field) - 10f64.sqrt()).abs() < 1e-12;
    CheckResult::new("mollifier mass", pass, format!("c = {c:.6}, |sum psi_eps dx - 1| = {err:.3e} (tol 1e-12)"))
}

fn moderateness_check() -> CheckResult {
    let pairs: Vec<(f64, f64)> = [0.8, 0.4, 0.2, 0.1, 0.05].iter().map(|&e: &f64| (e, 3.0 * e.powf(-1.5))).collect();
    match fit_moderateness(&pairs, ScalingLaw::Power) {
        Ok(fit) => CheckResult::new(
            "moderateness fit (synthetic N = 1.5)",
            (fit.exponent - 1.5).abs() <= 1e-9,
            format!("N_hat = {:.12}", fit.exponent),
        ),
        Err(e) => CheckResult::new("moderateness fit (synthetic N = 1.5)", false, e.to_string()),
    }
}

pub fn battery_with(eigen: &Arc<Grid>) -> Vec<CheckResult> {
    vec![eigenfunction_check(eigen), mass_check(), mollifier_check(), moderateness_check()]
}

pub fn battery() -> Vec<CheckResult> {
    battery_with(&eigen_grid())
}

pub fn report(results: &[CheckResult]) -> String {
    let mut out: String = results.iter().map(|r| r.line() + "\n").collect();
    let failed = results.iter().filter(|r| !r.pass).count();
    out.push_str(&format!("selftest: {} passed, {failed} failed\n", results.len() - failed));
    out
}

use serde::Serialize;

use super::conserved::check_coefficient;
use crate::error::{Error, Result};
use crate::regularization::GridCoefficient;
use crate::spectral::{half_laplacian, hs_norm, lp_norm, lp_norm_of, ComplexField, FractionalOrder, LpExponent};

/// Both sides of an inequality `lhs ≲ rhs` evaluated on one field.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundWitness {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs / rhs`; `None` when `rhs` vanishes.
    pub ratio: Option<f64>,
}

impl BoundWitness {
    pub fn new(label: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let ratio = (rhs > 0.0 && rhs.is_finite()).then(|| lhs / rhs);
        BoundWitness { label: label.into(), lhs, rhs, ratio }
    }

    pub fn is_degenerate(&self) -> bool {
        self.ratio.is_none()
    }
}

/// Energy estimate for the `H^s` norm along a trajectory:
/// `‖u(t)‖_{H^s} ≲ (1+‖V‖_∞)^{1/2}‖u₀‖_{H^s} + ‖g‖_∞^{1/2}‖u₀‖²_{L⁴}`.
pub fn lemma1_linfty_bound(
    u_t: &ComplexField,
    u0: &ComplexField,
    v: &GridCoefficient,
    g: &GridCoefficient,
    order: FractionalOrder,
) -> Result<BoundWitness> {
    u_t.check_same_grid(u0)?;
    check_coefficient(u0, v, "V")?;
    check_coefficient(u0, g, "g")?;
    let lhs = hs_norm(u_t, order);
    let rhs = (1.0 + v.linf_norm()).sqrt() * hs_norm(u0, order)
        + g.linf_norm().sqrt() * lp_norm(u0, LpExponent::Four).powi(2);
    Ok(BoundWitness::new("energy estimate (H^s)", lhs, rhs))
}

/// Sobolev embedding `‖f‖_{L^q} ≤ C ‖(−Δ)^{s/2} f‖_{L²}`, `q = 2d/(d−2s)`.
///
/// Only meaningful when `d > 2s`; with `d = 1` that is `s < 1/2`.
pub fn check_sobolev(u: &ComplexField, order: FractionalOrder) -> Result<BoundWitness> {
    let d = order.dimension() as f64;
    let s = order.s();
    if d <= 2.0 * s {
        return Err(Error::domain(format!(
            "Sobolev inequality needs d > 2s; got d = {d}, s = {s}"
        )));
    }
    let q = 2.0 * d / (d - 2.0 * s);
    let lhs = lp_norm_of(u.values(), u.grid().dx(), q);
    let rhs = lp_norm(&half_laplacian(u, order), LpExponent::Two);
    Ok(BoundWitness::new(format!("Sobolev (q = {q})"), lhs, rhs))
}

/// `‖u‖_{L^∞} / ‖u‖_{H^s}`, the embedding available when `d < 2s`.
pub fn embedding_witness(u: &ComplexField, order: FractionalOrder) -> BoundWitness {
    BoundWitness::new("H^s into L^inf", lp_norm(u, LpExponent::Infinity), hs_norm(u, order))
}

/// Exponent tuple of the fractional Gagliardo–Nirenberg–Sobolev inequality
/// `‖f‖_{W^{r,q}} ≲ ‖f‖^θ_{W^{s₁,p₁}} ‖f‖^{1−θ}_{W^{s₂,p₂}}`.
///
/// Infinite exponents are written as `f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GnsParams {
    pub r: f64,
    pub s1: f64,
    pub s2: f64,
    pub p1: f64,
    pub p2: f64,
    pub q: f64,
    pub theta: f64,
    pub d: u32,
}

fn recip(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

fn is_integer(x: f64) -> bool {
    x.is_finite() && (x - x.round()).abs() < 1e-12
}

impl GnsParams {
    /// Validates admissibility and rejects the two failure families.
    #[allow(clippy::too_many_arguments)]
    pub fn new(r: f64, s1: f64, s2: f64, p1: f64, p2: f64, q: f64, theta: f64, d: u32) -> Result<Self> {
        let bad = |msg: String| Err(Error::domain(format!("inadmissible GNS tuple: {msg}")));
        if d == 0 {
            return bad("d must be >= 1".into());
        }
        if !(0.0 <= s1 && s1 <= s2 && s2.is_finite()) {
            return bad(format!("need 0 <= s1 <= s2, got s1 = {s1}, s2 = {s2}"));
        }
        if r.is_nan() || r < 0.0 {
            return bad(format!("need r >= 0, got {r}"));
        }
        for (name, p) in [("p1", p1), ("p2", p2), ("q", q)] {
            if p.is_nan() || p < 1.0 {
                return bad(format!("need 1 <= {name} <= inf, got {p}"));
            }
        }
        if s1 == s2 && p1 == p2 {
            return bad("(s1, p1) must differ from (s2, p2)".into());
        }
        if !(theta > 0.0 && theta < 1.0) {
            return bad(format!("need theta in (0, 1), got {theta}"));
        }
        let mu = theta * s1 + (1.0 - theta) * s2;
        if r.is_nan() || r >= mu {
            return bad(format!("need r < mu = {mu}, got r = {r}"));
        }
        let inv_q = theta * recip(p1) + (1.0 - theta) * recip(p2) - (mu - r) / d as f64;
        if (inv_q - recip(q)).abs() > 1e-12 {
            return bad(format!("1/q = {} but the scaling relation gives {inv_q}", recip(q)));
        }

        // failure family 1
        if d == 1 && is_integer(s2) && s2 >= 1.0 && p1 > 1.0 && p2 == 1.0 && (s1 - (s2 - 1.0 + recip(p1))).abs() < 1e-12 {
            let first = p1.is_finite() && (r - (s2 - 1.0)).abs() < 1e-12;
            let second = s2 + theta * recip(p1) - 1.0 < r && r < s2 + theta * recip(p1) - theta;
            if first || second {
                return bad("falls in the d = 1, p2 = 1 exception family".into());
            }
        }
        // failure family 2
        let d_f = d as f64;
        if s1 < s2
            && q.is_infinite()
            && (s1 - d_f * recip(p1) - r).abs() < 1e-12
            && (s2 - d_f * recip(p2) - r).abs() < 1e-12
            && is_integer(r)
            && !(p1.is_infinite() && p2 == 1.0)
        {
            return bad("falls in the integer-r, q = inf exception family".into());
        }
        Ok(GnsParams { r, s1, s2, p1, p2, q, theta, d })
    }

    /// `‖f‖_{L⁶} ≲ ‖f‖^{θ}_{L²} ‖f‖^{1−θ}_{H^s}` with `θ = 1 − d/(3s)`.
    pub fn l6_tuple(s: f64) -> Result<Self> {
        let theta = 1.0 - 1.0 / (3.0 * s);
        Self::new(0.0, 0.0, s, 2.0, 2.0, 6.0, theta, 1)
    }
}

fn sobolev_l2_scale(u: &ComplexField, sigma: f64) -> Result<f64> {
    if sigma == 0.0 {
        Ok(lp_norm(u, LpExponent::Two))
    } else {
        Ok(hs_norm(u, FractionalOrder::new(sigma)?))
    }
}

/// Evaluates both sides of the GNS inequality for `L²`-based tuples
/// (`p₁ = p₂ = 2`, `r = 0`).
pub fn check_gns(u: &ComplexField, params: &GnsParams) -> Result<BoundWitness> {
    if params.p1 != 2.0 || params.p2 != 2.0 || params.r != 0.0 {
        return Err(Error::domain(
            "only L^2-scale GNS tuples (p1 = p2 = 2, r = 0) are implemented",
        ));
    }
    let lhs = lp_norm_of(u.values(), u.grid().dx(), params.q);
    let rhs = sobolev_l2_scale(u, params.s1)?.powf(params.theta)
        * sobolev_l2_scale(u, params.s2)?.powf(1.0 - params.theta);
    Ok(BoundWitness::new(format!("GNS (q = {}, s = {})", params.q, params.s2), lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid;
    use num_complex::Complex64;
    use std::f64::consts::PI;
    use std::sync::Arc;

    fn grid() -> Arc<Grid> {
        Arc::new(Grid::new(10.0, 256).unwrap())
    }

    #[test]
    fn energy_witness_is_one_at_time_zero_without_coefficients() {
        let g = grid();
        let u0 = ComplexField::from_real_fn(Arc::clone(&g), |x| (-(x - 5.0f64).powi(2)).exp());
        let zero = GridCoefficient::zeros(Arc::clone(&g));
        let w = lemma1_linfty_bound(&u0, &u0, &zero, &zero, FractionalOrder::new(1.0).unwrap()).unwrap();
        assert_eq!(w.ratio, Some(1.0));
    }

    #[test]
    fn energy_witness_homogeneous_without_interaction() {
        let g = grid();
        let u0 = ComplexField::from_real_fn(Arc::clone(&g), |x| (-(x - 5.0f64).powi(2)).exp());
        let ut = u0.scale(Complex64::new(0.5, 0.5));
        let v = GridCoefficient::constant(Arc::clone(&g), 2.0).unwrap();
        let zero = GridCoefficient::zeros(Arc::clone(&g));
        let order = FractionalOrder::new(0.8).unwrap();
        let a = lemma1_linfty_bound(&ut, &u0, &v, &zero, order).unwrap();
        let two = Complex64::new(2.0, 0.0);
        let b = lemma1_linfty_bound(&ut.scale(two), &u0.scale(two), &v, &zero, order).unwrap();
        assert!((a.ratio.unwrap() - b.ratio.unwrap()).abs() < 1e-12);
        assert!((b.lhs - 2.0 * a.lhs).abs() < 1e-12 * b.lhs);
    }

    #[test]
    fn sobolev_regime() {
        let g = grid();
        let u = ComplexField::from_fn(Arc::clone(&g), |x| Complex64::from_polar(1.0, 2.0 * PI * 3.0 * x / 10.0));
        let w = check_sobolev(&u, FractionalOrder::new(0.25).unwrap()).unwrap();
        assert!(w.label.contains("q = 4"));
        assert!(w.ratio.unwrap().is_finite());
        assert!(check_sobolev(&u, FractionalOrder::new(0.75).unwrap()).is_err());
        let zero = ComplexField::zeros(g);
        assert!(check_sobolev(&zero, FractionalOrder::new(0.25).unwrap()).unwrap().is_degenerate());
    }

    #[test]
    fn l6_tuple_is_admissible() {
        let p = GnsParams::l6_tuple(1.0).unwrap();
        assert!((p.theta - 2.0 / 3.0).abs() < 1e-15);
        assert!(GnsParams::l6_tuple(0.3).is_err()); // theta <= 0
    }

    #[test]
    fn gns_rejections() {
        // wrong q for the scaling relation
        assert!(GnsParams::new(0.0, 0.0, 1.0, 2.0, 2.0, 4.0, 2.0 / 3.0, 1).is_err());
        // r >= mu
        assert!(GnsParams::new(1.0, 0.0, 1.0, 2.0, 2.0, 6.0, 0.5, 1).is_err());
        // identical endpoints
        assert!(GnsParams::new(0.0, 1.0, 1.0, 2.0, 2.0, 2.0, 0.5, 1).is_err());
        // exception family 2 in d = 2: s1 - 2/p1 = s2 - 2/p2 = r = 0, q = inf
        let theta = 0.5;
        let mu = theta * 1.0 + (1.0 - theta) * 2.0;
        let inv_q: f64 = theta / 2.0 + (1.0 - theta) / 1.0 - mu / 2.0;
        assert!(inv_q.abs() < 1e-15);
        assert!(GnsParams::new(0.0, 1.0, 2.0, 2.0, 1.0, f64::INFINITY, theta, 2).is_err());
        // exception family 1: d = 1, s2 = 1, p2 = 1, p1 = 2, s1 = 1/2, r = 0 = s2 - 1
        let theta = 0.5;
        let mu = theta * 0.5 + (1.0 - theta) * 1.0;
        let inv_q = theta / 2.0 + (1.0 - theta) - mu;
        let q = 1.0 / inv_q;
        assert!(GnsParams::new(0.0, 0.5, 1.0, 2.0, 1.0, q, theta, 1).is_err());
    }

    #[test]
    fn gns_single_mode_closed_form() {
        let l = 10.0;
        let g = Arc::new(Grid::new(l, 128).unwrap());
        let k = 2.0 * PI * 3.0 / l;
        let u = ComplexField::from_fn(Arc::clone(&g), |x| Complex64::from_polar(1.7, k * x));
        let p = GnsParams::l6_tuple(1.0).unwrap();
        let w = check_gns(&u, &p).unwrap();
        let expected = l.powf(1.0 / 6.0) / (l.sqrt() * (1.0 + k * k).powf((1.0 - p.theta) / 2.0));
        assert!((w.ratio.unwrap() - expected).abs() < 1e-12 * expected);
        let zero = ComplexField::zeros(g);
        assert!(check_gns(&zero, &p).unwrap().is_degenerate());
    }

    #[test]
    fn gns_rejects_non_l2_scale() {
        let g = grid();
        let u = ComplexField::from_real_fn(g, |x| x.sin());
        let params = GnsParams::new(0.0, 0.0, 0.5, 2.0, 4.0, 8.0, 0.5, 1).unwrap();
        assert!(check_gns(&u, &params).is_err());
    }
}

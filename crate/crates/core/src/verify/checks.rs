//! Individual checks: kernels, inequalities, asymptotics.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lorentz::{acosh1p, form_a_best};
use crate::mobius::{dist_h2, halfplane_apply, iota_cosh_closed, iota_cosh_quadrature, iota_dist_closed, HalfPlanePoint, Mobius};
use crate::quad;
use crate::specfun;
use crate::supportfn::{EvenFn, Ellipse, Spectrum};

/// Relative tolerance of the kernel quadratures.
const KERNEL_REL_TOL: f64 = 1e-15;

/// `|cosh t − sinh t·e^{iθ}|^{−2}`, the derivative of the circle map
/// induced by `diag(eᵗ, e⁻ᵗ)`.
///
/// The squared modulus `cosh²t − 2 sinh t cosh t cos θ + sinh²t` is
/// evaluated as `e^{−2t} + 2 sinh 2t · sin²(θ/2)`, which is the same
/// expression without the cancellation near θ = 0.
pub fn jacobian_circle(t: f64, theta: f64) -> f64 {
    1.0 / modulus_sq(t, theta)
}

fn modulus_sq(t: f64, theta: f64) -> f64 {
    let s = (0.5 * theta).sin();
    (-2.0 * t).exp() + 2.0 * (2.0 * t).sinh() * s * s
}

/// The four kernel values at one `t > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelValues {
    pub t: f64,
    /// `(1/2π) ∫ |cosh t − sinh t e^{iθ}|^{−3} dθ`.
    pub i1: f64,
    /// `(1/2π) ∫ |A_tᵀu| dθ` with `A_t = diag(eᵗ, e⁻ᵗ)`.
    pub i2: f64,
    /// `(2/π) eᵗ E(√(1 − e^{−4t}))`.
    pub closed: f64,
    /// `exp(½ d_{H²}(A_t(i), i)) = eᵗ`.
    pub kern2: f64,
}

impl KernelValues {
    /// `kern2 − closed`, both in the cosh domain.
    pub fn gap(&self) -> f64 {
        self.kern2 - self.closed
    }
}

pub fn kernels_compare(t: f64) -> Result<KernelValues> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("kernel parameter must be positive, got {t}")));
    }
    let i1 = quad::periodic_mean(|th| modulus_sq(t, th).powf(-1.5), TAU, KERNEL_REL_TOL)?;
    let a_t = Mobius::translation(2.0 * t);
    let i2 = iota_cosh_quadrature(&a_t)?;
    let closed = iota_cosh_closed(2.0 * t)?;
    let image = halfplane_apply(&a_t, &HalfPlanePoint::i());
    let kern2 = (0.5 * dist_h2(&image, &HalfPlanePoint::i())).exp();
    Ok(KernelValues { t, i1, i2, closed, kern2 })
}

/// Residual of the Minkowski inequality for one pair,
/// `𝐀(h₁, h₂)² − 𝐀(h₁)𝐀(h₂)`, and the size of its largest term.
pub fn minkowski_pair(h1: &EvenFn, h2: &EvenFn) -> Result<(f64, f64)> {
    let a12 = form_a_best(h1, h2)?;
    let a11 = form_a_best(h1, h1)?;
    let a22 = form_a_best(h2, h2)?;
    Ok((a12 * a12 - a11 * a22, (a12 * a12).max((a11 * a22).abs())))
}

/// Residual and scale of the signed extension of the Minkowski inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtendedResidual {
    /// `(Σ c_k 𝐀(h_k, h₀))² − 𝐀(h₀) Σ c_i c_j 𝐀(h_i, h_j)`.
    pub residual: f64,
    /// Largest of the two sides computed with absolute values.
    pub scale: f64,
}

impl ExtendedResidual {
    pub fn scaled(&self) -> f64 {
        if self.scale == 0.0 {
            0.0
        } else {
            self.residual / self.scale
        }
    }
}

/// `bodies[0]` is `h₀`, the rest are paired with `coeffs`.
pub fn minkowski_extended_test(bodies: &[EvenFn], coeffs: &[f64]) -> Result<ExtendedResidual> {
    if bodies.len() != coeffs.len() + 1 || coeffs.is_empty() {
        return Err(Error::Domain(format!(
            "need n + 1 bodies for n coefficients, got {} and {}",
            bodies.len(),
            coeffs.len()
        )));
    }
    let n = bodies.len();
    let mut gram = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = form_a_best(&bodies[i], &bodies[j])?;
            gram[i][j] = v;
            gram[j][i] = v;
        }
    }
    if let Some(i) = (0..n).find(|&i| !(gram[i][i] > 0.0)) {
        return Err(Error::NonPositiveArea(gram[i][i]));
    }
    let lin: f64 = coeffs.iter().enumerate().map(|(k, c)| c * gram[k + 1][0]).sum();
    let lin_abs: f64 = coeffs.iter().enumerate().map(|(k, c)| (c * gram[k + 1][0]).abs()).sum();
    let mut quad_sum = 0.0;
    let mut quad_abs = 0.0;
    for (i, ci) in coeffs.iter().enumerate() {
        for (j, cj) in coeffs.iter().enumerate() {
            let term = ci * cj * gram[i + 1][j + 1];
            quad_sum += term;
            quad_abs += term.abs();
        }
    }
    Ok(ExtendedResidual {
        residual: lin * lin - gram[0][0] * quad_sum,
        scale: (lin_abs * lin_abs).max(gram[0][0] * quad_abs),
    })
}

/// Mean-square energy of `h²` in harmonics `n ≥ 4` for `h = h₁ + h₂`.
/// The square of an ellipse support function is a quadratic form in
/// `(cos θ, sin θ)`, so this vanishes exactly when the sum is an ellipse.
pub fn ellipse_sum_energy(h1: &EvenFn, h2: &EvenFn) -> Result<f64> {
    let h = EvenFn::combine(1.0, h1, 1.0, h2)?;
    let sq: Vec<f64> = h.samples().iter().map(|x| x * x).collect();
    Ok(Spectrum::from_samples(&sq).energy_from(4))
}

pub fn ellipse_sum_test(e1: &Ellipse, e2: &Ellipse, grid: usize) -> Result<f64> {
    ellipse_sum_energy(&EvenFn::from_ellipse(e1, grid)?, &EvenFn::from_ellipse(e2, grid)?)
}

/// Ratios `d(s)/s` of the embedded distance and their Richardson limit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureEstimate {
    pub ratios: Vec<(f64, f64)>,
    /// Extrapolation of the two smallest `s` under the model
    /// `r(s) = r₀ + c s²`.
    pub richardson: f64,
}

/// The ratio tends to `√(3/8)` with an `O(s²)` error.
pub fn curvature_scale_estimate(s_values: &[f64]) -> Result<CurvatureEstimate> {
    if s_values.len() < 2 || s_values.iter().any(|&s| !(s > 0.0)) {
        return Err(Error::Domain("need at least two positive s values".into()));
    }
    let ratios = s_values
        .iter()
        .map(|&s| iota_dist_closed(s).map(|d| (s, d / s)))
        .collect::<Result<Vec<_>>>()?;
    let mut sorted = ratios.clone();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let ((s1, r1), (s2, r2)) = (sorted[0], sorted[1]);
    if s1 == s2 {
        return Err(Error::Domain("the two smallest s values coincide".into()));
    }
    let richardson = (s2 * s2 * r1 - s1 * s1 * r2) / (s2 * s2 - s1 * s1);
    Ok(CurvatureEstimate { ratios, richardson })
}

/// Embedded distance at `s` with its two envelopes and the deviation from
/// `s/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuasiIsoPoint {
    pub s: f64,
    pub d: f64,
    /// `acosh(2e^{s/2}/π)` where the argument is at least one.
    pub lower: Option<f64>,
    /// `acosh(e^{s/2})`.
    pub upper: f64,
    /// Smallest relative gap between `cosh d` and the cosh of either
    /// envelope. For large s, d and the lower envelope agree to far below
    /// rounding, so the ordering is decided on the arguments: `E(k) ≥ 1`
    /// and `2E(k)/π ≤ 1`.
    pub sandwich_slack: f64,
}

pub fn quasi_iso_point(s: f64) -> Result<QuasiIsoPoint> {
    let d = iota_dist_closed(s)?;
    let lower_arg = 2.0 / PI * (0.5 * s).exp();
    let lower = (lower_arg >= 1.0).then(|| acosh1p(lower_arg - 1.0));
    let upper = acosh1p((0.5 * s).exp_m1());
    let (_, e) = specfun::agm_ke_complement((-s).exp())?;
    let mut sandwich_slack = 1.0 - 2.0 * e / PI;
    if lower.is_some() {
        sandwich_slack = sandwich_slack.min((e - 1.0) / e);
    }
    Ok(QuasiIsoPoint { s, d, lower, upper, sandwich_slack })
}

//! The Lorentzian form on even functions and the hyperboloid of area-π
//! bodies.
//!
//! For even functions with trigonometric coefficients `(aₙ, bₙ)`
//!
//! ```text
//! 𝐀(h₁, h₂) = (1/2π) ∫ (h₁h₂ − h₁'h₂') = a₀a₀' + ½ Σ_{n≥2} (1 − n²)(aₙaₙ' + bₙbₙ')
//! ```
//!
//! For support functions `π·𝐀(h_K, h_L)` is the mixed area of K and L. The
//! form has one positive direction (the constants), so bodies of area π
//! sit on the hyperboloid `𝐀(h) = 1` and `cosh d(h₁, h₂) = 𝐀(h₁, h₂)`.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::geom::{Mat2, Vec2};
use crate::limits::BoundaryDir;
use crate::quad;
use crate::supportfn::{EvenFn, Shape};

/// Below `1 − REVERSED_CS_TOL` reversed Cauchy–Schwarz is reported broken;
/// values between that and 1 are round-off and clamped to 1.
pub const REVERSED_CS_TOL: f64 = 1e-9;
/// Tolerance of the hyperboloid invariants.
pub const HPOINT_TOL: f64 = 1e-10;

const EXACT_QUAD_TOL: f64 = 1e-14;

fn same_grid(h1: &EvenFn, h2: &EvenFn) -> Result<()> {
    if h1.grid() != h2.grid() {
        return Err(Error::GridMismatch {
            left: h1.grid(),
            right: h2.grid(),
        });
    }
    Ok(())
}

/// Spectral `𝐀(h₁, h₂)` from the coefficients up to the Nyquist harmonic.
pub fn form_a(h1: &EvenFn, h2: &EvenFn) -> Result<f64> {
    same_grid(h1, h2)?;
    let (s, t) = (h1.spectrum(), h2.spectrum());
    let mut acc = s.a[0] * t.a[0];
    for n in 2..=s.nyquist() {
        let w = 0.5 * (1.0 - (n * n) as f64);
        acc += w * (s.a[n] * t.a[n] + s.b[n] * t.b[n]);
    }
    Ok(acc)
}

/// `𝐀(h, h)`.
pub fn form_a_self(h: &EvenFn) -> f64 {
    form_a(h, h).expect("same grid")
}

/// `𝐀(h₁, h₂)` from the closed forms of two tagged shapes, by adaptive
/// quadrature of `(1/2π) ∫ (h₁h₂ − h₁'h₂')` split at the kinks.
///
/// `None` unless both functions carry a shape tag.
pub fn form_a_exact(h1: &EvenFn, h2: &EvenFn) -> Option<f64> {
    let (a, b) = (h1.shape()?, h2.shape()?);
    Some(shape_form(a, b))
}

/// `𝐀` between two exact shapes.
pub fn shape_form(a: &Shape, b: &Shape) -> f64 {
    if matches!(a, Shape::Sum(_)) || matches!(b, Shape::Sum(_)) {
        return a.parts().iter().map(|p| b.parts().iter().map(|q| shape_form(p, q)).sum::<f64>()).sum();
    }
    if a == b {
        return a.area() / PI;
    }
    if let (Shape::Ellipse(m), Shape::Ellipse(n)) = (a, b) {
        return ellipse_form(m, n);
    }
    // Both integrands are π-periodic.
    let mut breaks: Vec<f64> = a.breakpoints().into_iter().chain(b.breakpoints()).map(|t| t % PI).collect();
    breaks.sort_by(f64::total_cmp);
    let f = |t: f64| a.support(t) * b.support(t) - a.support_deriv(t) * b.support_deriv(t);
    quad::gauss_kronrod_pieces(f, 0.0, PI, &breaks, EXACT_QUAD_TOL) / PI
}

/// Mixed form of two ellipses `MD`, `ND`: by invariance it is the disc
/// against `M⁻¹N D`, i.e. `π₀` of that ellipse, times `√det M · √det N`.
fn ellipse_form(m: &Mat2, n: &Mat2) -> f64 {
    let (dm, dn) = (m.determinant(), n.determinant());
    let Some(minv) = m.try_inverse() else {
        return 0.0;
    };
    let rel = minv * n / (dn / dm).sqrt();
    dm.abs().sqrt() * dn.abs().sqrt() * Shape::Ellipse(rel).perimeter() / TAU
}

/// `𝐀(h₁, h₂)` using closed forms whenever both sides are tagged and one
/// of them has kinks, the spectral sum otherwise. Ellipses are analytic and
/// the spectral sum is already exact to rounding for them.
pub fn form_a_best(h1: &EvenFn, h2: &EvenFn) -> Result<f64> {
    same_grid(h1, h2)?;
    match (h1.shape(), h2.shape()) {
        (Some(a), Some(b)) if !(matches!(a, Shape::Ellipse(_)) && matches!(b, Shape::Ellipse(_))) => {
            Ok(shape_form(a, b))
        }
        (Some(a), Some(b)) if a == b => Ok(a.area() / PI),
        _ => form_a(h1, h2),
    }
}

/// Mean of `h` over the circle: the sample mean, or `perimeter / 2π` when
/// a shape tag is present (the sample mean of a kinked function is only
/// second-order accurate).
pub fn pi0(h: &EvenFn) -> f64 {
    match h.shape() {
        Some(s) => s.perimeter() / TAU,
        None => pi0_samples(h),
    }
}

/// Plain sample mean.
pub fn pi0_samples(h: &EvenFn) -> f64 {
    h.samples().iter().sum::<f64>() / h.grid() as f64
}

/// `(∫₀^{2π} h², ∫₀^{2π} h'²)` by Parseval. No `1/2π` normalization, so
/// `(L2sq − dL2sq) / 2π = 𝐀(h)`.
pub fn h1_seminorms(h: &EvenFn) -> (f64, f64) {
    let s = h.spectrum();
    let mut l2 = s.a[0] * s.a[0];
    let mut dl2 = 0.0;
    for n in 1..=s.nyquist() {
        let e = 0.5 * (s.a[n] * s.a[n] + s.b[n] * s.b[n]);
        l2 += e;
        dl2 += (n * n) as f64 * e;
    }
    (TAU * l2, TAU * dl2)
}

/// `acosh(1 + x)` without cancellation for small `x ≥ 0`.
pub fn acosh1p(x: f64) -> f64 {
    (x + (x * (2.0 + x)).sqrt()).ln_1p()
}

/// Point of the hyperboloid: an even function with `𝐀(h) = 1` and
/// `π₀(h) > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct HPoint(EvenFn);

impl HPoint {
    /// Checks the hyperboloid invariants.
    pub fn new(h: EvenFn) -> Result<Self> {
        let a = form_a_best(&h, &h)?;
        if (a - 1.0).abs() > HPOINT_TOL {
            return Err(Error::Invariant(format!("𝐀(h) = {a}, expected 1")));
        }
        let p = pi0(&h);
        if p < 1.0 - HPOINT_TOL {
            return Err(Error::Invariant(format!("π₀(h) = {p} < 1")));
        }
        Ok(HPoint(h))
    }

    /// The disc `𝟏`.
    pub fn origin(m: usize) -> Result<Self> {
        Ok(HPoint(EvenFn::one(m)?))
    }

    pub fn as_fn(&self) -> &EvenFn {
        &self.0
    }

    pub fn into_fn(self) -> EvenFn {
        self.0
    }

    pub fn grid(&self) -> usize {
        self.0.grid()
    }

    /// `π₀` of the point, i.e. `cosh d(𝟏, p)`.
    pub fn pi0(&self) -> f64 {
        pi0(&self.0)
    }
}

/// Rescales `h` to `𝐀 = 1`: the homothetic body of area π.
pub fn normalize(h: &EvenFn) -> Result<HPoint> {
    let a = form_a_best(h, h)?;
    if !(a > 0.0) {
        return Err(Error::NonPositiveArea(a));
    }
    if !(pi0(h) > 0.0) {
        return Err(Error::Domain("π₀(h) must be positive".into()));
    }
    let mut p = h.scaled(1.0 / a.sqrt());
    if let Some(Shape::Ellipse(m)) = p.shape() {
        // Keep the closed form at unit determinant exactly.
        let det = m.determinant();
        if det != 1.0 {
            let fixed = Shape::Ellipse(m / det.sqrt());
            p = EvenFn::from_shape(fixed, h.grid())?;
        }
    }
    HPoint::new(p)
}

/// `cosh d(p, q) − 1`, clamped for round-off.
///
/// When the form is spectral this is evaluated from the difference,
/// `𝐀(p, q) − 1 = −½𝐀(p − q) + ½(√𝐀(p) − √𝐀(q))²` divided by
/// `√(𝐀(p)𝐀(q))`, which keeps its relative accuracy as `q → p`. Pairs of
/// kinked tagged shapes use the exact mixed form directly.
pub fn cosh_dist_m1(p: &HPoint, q: &HPoint) -> Result<f64> {
    same_grid(&p.0, &q.0)?;
    if p == q {
        return Ok(0.0);
    }
    let x = match (p.0.shape(), q.0.shape()) {
        (Some(a), Some(b)) if !(matches!(a, Shape::Ellipse(_)) && matches!(b, Shape::Ellipse(_))) => {
            shape_form(a, b) / (shape_form(a, a) * shape_form(b, b)).sqrt() - 1.0
        }
        _ => {
            let diff = EvenFn::linear(1.0, &p.0, -1.0, &q.0)?;
            let (a, b) = (form_a_self(&p.0), form_a_self(&q.0));
            let (ra, rb) = (a.sqrt(), b.sqrt());
            (-0.5 * form_a_self(&diff) + 0.5 * (ra - rb) * (ra - rb)) / (ra * rb)
        }
    };
    if x < -REVERSED_CS_TOL {
        return Err(Error::Invariant(format!("reversed Cauchy–Schwarz fails: 𝐀(p, q) = {}", 1.0 + x)));
    }
    Ok(x.max(0.0))
}

/// `cosh d(p, q) = 𝐀(p, q)`, clamped for round-off.
pub fn cosh_dist(p: &HPoint, q: &HPoint) -> Result<f64> {
    Ok(1.0 + cosh_dist_m1(p, q)?)
}

/// Hyperbolic distance `acosh 𝐀(p, q)`.
pub fn hyper_dist(p: &HPoint, q: &HPoint) -> Result<f64> {
    Ok(acosh1p(cosh_dist_m1(p, q)?))
}

/// `normalize((1 − t)p + tq)`, `t ∈ [0, 1]`. The affine parameter is not
/// arclength, but every such point lies on the geodesic through p and q.
pub fn geodesic_point(p: &HPoint, q: &HPoint, t: f64) -> Result<HPoint> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("geodesic parameter {t} outside [0, 1]")));
    }
    if t == 0.0 || p == q {
        return Ok(p.clone());
    }
    if t == 1.0 {
        return Ok(q.clone());
    }
    normalize(&EvenFn::combine(1.0 - t, &p.0, t, &q.0)?)
}

/// Area-π parallelogram `a[−v, v] + b[−w, w]` with unit `v, w` along the
/// directions and `a = a₀eˣ`, `b = a₀e⁻ˣ`. As `x` runs over ℝ this is the
/// geodesic joining the two boundary points, parametrized by arclength.
pub fn segment_geodesic_point(nu: BoundaryDir, omega: BoundaryDir, x: f64, m: usize) -> Result<HPoint> {
    let (v, w, a0) = rhombus_frame(nu, omega)?;
    let h = EvenFn::combine(
        a0 * x.exp(),
        &EvenFn::from_shape(Shape::Segment(v), m)?,
        a0 * (-x).exp(),
        &EvenFn::from_shape(Shape::Segment(w), m)?,
    )?;
    HPoint::new(h)
}

/// `π₀(p(x)) − π₀(p(0))` along [`segment_geodesic_point`], evaluated
/// without cancellation so the minimum can be located to rounding.
pub fn segment_geodesic_pi0_excess(nu: BoundaryDir, omega: BoundaryDir, x: f64) -> Result<f64> {
    let (_, _, a0) = rhombus_frame(nu, omega)?;
    // π₀ of a unit segment is 2/π.
    Ok(2.0 * a0 / PI * (x.exp_m1() + (-x).exp_m1()))
}

fn rhombus_frame(nu: BoundaryDir, omega: BoundaryDir) -> Result<(Vec2, Vec2, f64)> {
    let (v, w) = (nu.unit(), omega.unit());
    let det = crate::geom::cross(&v, &w).abs();
    if det < 1e-12 {
        return Err(Error::Degenerate("boundary directions coincide".into()));
    }
    // area(a[−v,v] + a[−w,w]) = 4a²|det(v, w)| = π.
    Ok((v, w, (PI / (4.0 * det)).sqrt()))
}

/// Nearest point to the disc on the geodesic between two segment
/// directions: the rhombus with equal coefficients on both unit segments.
pub fn project_disc_to_segment_geodesic(nu: BoundaryDir, omega: BoundaryDir, m: usize) -> Result<HPoint> {
    segment_geodesic_point(nu, omega, 0.0, m)
}

/// Hyperbolic distance between the area-π normalizations of two bodies.
pub fn dist_between_bodies(h1: &EvenFn, h2: &EvenFn) -> Result<f64> {
    hyper_dist(&normalize(h1)?, &normalize(h2)?)
}

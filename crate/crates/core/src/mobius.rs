//! `PSL₂(ℝ)` acting on the circle, on support functions and on the upper
//! half-plane, and the embedding of the hyperbolic plane as the orbit of
//! the disc.
//!
//! A matrix `m` maps a body K to mK, so its support function becomes
//!
//! ```text
//! ρ(m)h(x) = |mᵀx| · h(mᵀx / |mᵀx|)
//! ```
//!
//! The orbit of the disc is the set of area-π ellipses. Sending `m(i)` to
//! the ellipse `mD` is well defined (rotations fix both), and the induced
//! distance only depends on `s = d_{H²}(z₁, z₂)`:
//!
//! ```text
//! cosh d(ι(z₁), ι(z₂)) = (1/2π) ∫ |T_sᵀu| dθ = (2/π) e^{s/2} E(√(1 − e^{−2s}))
//! ```
//!
//! with `T_s = diag(e^{s/2}, e^{−s/2})`. The same one-parameter subgroup is
//! sometimes written `A_t = diag(eᵗ, e⁻ᵗ)`; then `s = 2t`.

use std::f64::consts::{PI, TAU};
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::geom::{angle_of, singular_values, unit, Mat2, Vec2};
use crate::lorentz::{acosh1p, normalize, HPoint};
use crate::par::{map_range, Execution};
use crate::quad;
use crate::specfun;
use crate::supportfn::{grid_angle, EvenFn, Ellipse};

const DET_TOL: f64 = 1e-9;
/// Relative tolerance of the periodic quadrature in [`iota_cosh_quadrature`].
pub const QUAD_REL_TOL: f64 = 1e-15;
/// Largest `s` accepted by the closed-form distance.
pub const MAX_S: f64 = 700.0;

/// Element of `PSL₂(ℝ)`: a unit-determinant matrix up to sign, stored with
/// the first nonzero of `(a, b, c, d)` positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mobius {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Mobius {
    /// Accepts `|ad − bc − 1| ≤ 1e-9` and rescales to unit determinant.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if ![a, b, c, d].iter().all(|x| x.is_finite()) {
            return Err(Error::Domain("non-finite Möbius entry".into()));
        }
        let det = a * d - b * c;
        if (det - 1.0).abs() > DET_TOL {
            return Err(Error::Degenerate(format!("determinant {det}, expected 1")));
        }
        Ok(Self::canonical(a, b, c, d))
    }

    /// Any matrix of positive determinant, scaled to determinant one.
    pub fn from_matrix(m: &Mat2) -> Result<Self> {
        let det = m.determinant();
        if !(det > 0.0) || !det.is_finite() {
            return Err(Error::Degenerate(format!("determinant {det} is not positive")));
        }
        let r = 1.0 / det.sqrt();
        Self::new(m[(0, 0)] * r, m[(0, 1)] * r, m[(1, 0)] * r, m[(1, 1)] * r)
    }

    fn canonical(a: f64, b: f64, c: f64, d: f64) -> Self {
        let first = [a, b, c, d].into_iter().find(|x| *x != 0.0).unwrap_or(1.0);
        let sign = if first < 0.0 { -1.0 } else { 1.0 };
        Mobius {
            a: sign * a,
            b: sign * b,
            c: sign * c,
            d: sign * d,
        }
    }

    pub fn identity() -> Self {
        Mobius {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        }
    }

    /// Rotation by `phi`.
    pub fn rotation(phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        Self::canonical(c, -s, s, c)
    }

    /// `T_s = diag(e^{s/2}, e^{−s/2})`, which moves `i` to `eˢi`.
    pub fn translation(s: f64) -> Self {
        Mobius {
            a: (0.5 * s).exp(),
            b: 0.0,
            c: 0.0,
            d: (-0.5 * s).exp(),
        }
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::new(self.a, self.b, self.c, self.d)
    }

    pub fn inverse(&self) -> Self {
        Self::canonical(self.d, -self.b, -self.c, self.a)
    }

    /// Operator norm, the larger singular value.
    pub fn norm(&self) -> f64 {
        singular_values(&self.matrix()).0
    }

    /// `s = 2 ln σ_max`: the displacement `d_{H²}(i, m(i))`, and the middle
    /// factor of `m = R₁ T_s R₂`.
    pub fn translation_length(&self) -> f64 {
        2.0 * self.norm().ln()
    }

    /// Cartan decomposition `m = R(φ₁) T_s R(φ₂)`, returned as `(φ₁, s, φ₂)`.
    pub fn kak(&self) -> (f64, f64, f64) {
        let m = self.matrix();
        let g = m * m.transpose();
        // Major eigenvector of m mᵀ: tan 2φ₁ = 2g₀₁ / (g₀₀ − g₁₁).
        let phi1 = 0.5 * (2.0 * g[(0, 1)]).atan2(g[(0, 0)] - g[(1, 1)]);
        let s = self.translation_length();
        let r2 = Mobius::translation(-s).matrix() * Mobius::rotation(-phi1).matrix() * m;
        (phi1, s, r2[(1, 0)].atan2(r2[(0, 0)]))
    }
}

impl Mul for Mobius {
    type Output = Mobius;

    fn mul(self, rhs: Mobius) -> Mobius {
        let m = self.matrix() * rhs.matrix();
        // Re-project onto determinant one to stop drift.
        let r = 1.0 / m.determinant().sqrt();
        Mobius::canonical(m[(0, 0)] * r, m[(0, 1)] * r, m[(1, 0)] * r, m[(1, 1)] * r)
    }
}

/// Angle of `m u(θ) / |m u(θ)|` in `[0, 2π)`.
pub fn act_circle(m: &Mobius, theta: f64) -> f64 {
    angle_of(&(m.matrix() * unit(theta)))
}

/// `ρ(m)h`, the support function of `mK` when `h = h_K`.
pub fn rho_act(m: &Mobius, h: &EvenFn) -> Result<EvenFn> {
    rho_act_with(m, h, Execution::default())
}

/// [`rho_act`] with an explicit execution mode. Tagged inputs are
/// transported exactly; other inputs are read off their trigonometric
/// interpolant, which should resolve the sheared spectrum.
pub fn rho_act_with(m: &Mobius, h: &EvenFn, exec: Execution) -> Result<EvenFn> {
    let mat = m.matrix();
    if let Some(shape) = h.shape() {
        return EvenFn::from_shape(shape.transformed(&mat), h.grid());
    }
    let grid = h.grid();
    let half = grid / 2;
    let mt = mat.transpose();
    let spec = h.spectrum();
    let first: Vec<f64> = map_range(half, exec, |j| {
        let w: Vec2 = mt * unit(grid_angle(j, grid));
        let r = w.norm();
        r * spec.eval(angle_of(&w))
    });
    let mut samples = first.clone();
    samples.extend_from_slice(&first);
    let out = EvenFn::from_samples(samples)?;
    let tail = out.spectral_tail_fraction();
    if tail > crate::supportfn::TAIL_WARN_FRACTION {
        log::warn!("rho_act: {:.2}% of the energy sits in the top quarter of the spectrum", 100.0 * tail);
    }
    Ok(out)
}

/// Point of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlanePoint {
    x: f64,
    y: f64,
}

impl HalfPlanePoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(Error::Domain(format!("({x}, {y}) is not in the upper half-plane")));
        }
        Ok(HalfPlanePoint { x, y })
    }

    /// The base point `i`.
    pub fn i() -> Self {
        HalfPlanePoint { x: 0.0, y: 1.0 }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }
}

/// `(az + b) / (cz + d)`.
pub fn halfplane_apply(m: &Mobius, z: &HalfPlanePoint) -> HalfPlanePoint {
    let [a, b, c, d] = m.entries();
    let (re, im) = (c * z.x + d, c * z.y);
    let den = re * re + im * im;
    let x = ((a * z.x + b) * re + a * z.y * im) / den;
    // Unit determinant: Im = y / |cz + d|².
    HalfPlanePoint { x, y: z.y / den }
}

/// The upper triangular `[[√y, x/√y], [0, 1/√y]]`, which sends `i` to z.
pub fn mobius_from_halfplane(z: &HalfPlanePoint) -> Mobius {
    let r = z.y.sqrt();
    Mobius::canonical(r, z.x / r, 0.0, 1.0 / r)
}

/// Hyperbolic distance in the half-plane (curvature −1), from
/// `cosh d = 1 + |z₁ − z₂|² / (2y₁y₂)`.
pub fn dist_h2(z1: &HalfPlanePoint, z2: &HalfPlanePoint) -> f64 {
    let (dx, dy) = (z1.x - z2.x, z1.y - z2.y);
    acosh1p((dx * dx + dy * dy) / (2.0 * z1.y * z2.y))
}

/// `‖B⁻¹A‖²_F / 2` for the sections A, B of z₁, z₂: the same `cosh d` by
/// the Frobenius route.
pub fn cosh_dist_h2_frobenius(z1: &HalfPlanePoint, z2: &HalfPlanePoint) -> f64 {
    let a = mobius_from_halfplane(z1);
    let b = mobius_from_halfplane(z2);
    let q = b.inverse().matrix() * a.matrix();
    0.5 * q.norm_squared()
}

/// `ι(z)`: the area-π ellipse `mD` for any m with `m(i) = z`.
pub fn iota(z: &HalfPlanePoint, grid: usize) -> Result<HPoint> {
    let e = Ellipse::new(mobius_from_halfplane(z).matrix())?;
    normalize(&EvenFn::from_ellipse(&e, grid)?)
}

/// `cosh d(𝟏, ρ(m)𝟏) = (1/2π) ∫ |mᵀu|` by the periodic trapezoid rule.
pub fn iota_cosh_quadrature(m: &Mobius) -> Result<f64> {
    let mt = m.matrix().transpose();
    quad::periodic_mean(|t| (mt * unit(t)).norm(), PI, QUAD_REL_TOL)
}

/// `d(ι(i), ι(m(i)))` by quadrature.
pub fn iota_dist_quadrature(m: &Mobius) -> Result<f64> {
    Ok(acosh1p((iota_cosh_quadrature(m)? - 1.0).max(0.0)))
}

/// `(2/π) e^{s/2} E(√(1 − e^{−2s}))`, the cosh of the embedded distance
/// for points at hyperbolic distance s. The modulus is passed through its
/// complement `e^{−s}` so that large s stays accurate.
pub fn iota_cosh_closed(s: f64) -> Result<f64> {
    if !(0.0..=MAX_S).contains(&s) {
        return Err(Error::Domain(format!("s = {s} outside [0, {MAX_S}]")));
    }
    let (_, e) = specfun::agm_ke_complement((-s).exp())?;
    Ok(2.0 / PI * (0.5 * s).exp() * e)
}

/// `iota_cosh_closed(s) − 1` without cancellation for small s.
pub fn iota_cosh_m1_closed(s: f64) -> Result<f64> {
    let c = iota_cosh_closed(s)?;
    let q = -(-2.0 * s).exp_m1();
    if q > SERIES_MAX_Q {
        return Ok(c - 1.0);
    }
    // (1 − q)^{−1/4} · 2E/π as a power series in q = k²; both leading
    // coefficients cancel against the 1.
    let mut a = [0.0; SERIES_TERMS];
    let mut b = [0.0; SERIES_TERMS];
    let (mut an, mut tn) = (1.0, 1.0);
    for n in 0..SERIES_TERMS {
        if n > 0 {
            an *= (n as f64 - 0.75) / n as f64;
            tn *= (2 * n - 1) as f64 / (2 * n) as f64;
        }
        a[n] = an;
        b[n] = tn * tn / (1.0 - 2.0 * n as f64);
    }
    let sum = (2..SERIES_TERMS)
        .rev()
        .map(|n| (0..=n).map(|i| a[i] * b[n - i]).sum::<f64>())
        .fold(0.0, |acc, c| acc * q + c);
    Ok(sum * q * q)
}

const SERIES_MAX_Q: f64 = 0.25;
const SERIES_TERMS: usize = 40;

/// `d(ι(z₁), ι(z₂))` for `d_{H²}(z₁, z₂) = s`.
pub fn iota_dist_closed(s: f64) -> Result<f64> {
    Ok(acosh1p(iota_cosh_m1_closed(s)?.max(0.0)))
}

/// Embedded distance between two half-plane points through the closed
/// form.
pub fn iota_dist_between(z1: &HalfPlanePoint, z2: &HalfPlanePoint) -> Result<f64> {
    iota_dist_closed(dist_h2(z1, z2))
}

/// Mean of `|mᵀu|` over the circle, `π₀` of the ellipse `mD`.
pub fn mean_support_of(m: &Mobius) -> f64 {
    let (s1, s2) = singular_values(&m.matrix());
    match specfun::agm_ke_complement(s2 / s1) {
        Ok((_, e)) => 4.0 * s1 * e / TAU,
        Err(_) => 4.0 * s1 / TAU,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, FRAC_PI_4};

    #[test]
    fn canonical_sign() {
        let m = Mobius::new(-1.0, 0.0, 0.0, -1.0).unwrap();
        assert_eq!(m, Mobius::identity());
        assert!(Mobius::new(2.0, 0.0, 0.0, 2.0).is_err());
    }

    #[test]
    fn circle_action() {
        assert_eq!(act_circle(&Mobius::identity(), 1.0), 1.0);
        assert!((act_circle(&Mobius::rotation(0.5), 1.0) - 1.5).abs() < 1e-15);
        let d = Mobius::new(E, 0.0, 0.0, 1.0 / E).unwrap();
        assert!((act_circle(&d, FRAC_PI_4) - (1.0 / E).atan2(E)).abs() < 1e-15);
    }

    #[test]
    fn halfplane_translation_and_section() {
        let s = 0.7;
        let z = halfplane_apply(&Mobius::translation(s), &HalfPlanePoint::i());
        assert!(z.x().abs() < 1e-15 && (z.y() - s.exp()).abs() < 1e-14);
        assert_eq!(mobius_from_halfplane(&HalfPlanePoint::i()), Mobius::identity());
        let w = HalfPlanePoint::new(-0.3, 2.5).unwrap();
        let back = halfplane_apply(&mobius_from_halfplane(&w), &HalfPlanePoint::i());
        assert!((back.x() + 0.3).abs() < 1e-15 && (back.y() - 2.5).abs() < 1e-15);
        assert!(HalfPlanePoint::new(0.0, 0.0).is_err());
    }

    #[test]
    fn half_plane_distance() {
        let z = HalfPlanePoint::new(0.0, 3f64.exp()).unwrap();
        assert!((dist_h2(&HalfPlanePoint::i(), &z) - 3.0).abs() < 1e-14);
        assert!((cosh_dist_h2_frobenius(&HalfPlanePoint::i(), &z) - 3f64.cosh()).abs() < 1e-13);
        assert_eq!(dist_h2(&z, &z), 0.0);
    }

    #[test]
    fn kak_reconstructs() {
        let m = Mobius::from_matrix(&Mat2::new(1.2, -0.7, 0.4, 0.9)).unwrap();
        let (p1, s, p2) = m.kak();
        let back = Mobius::rotation(p1) * Mobius::translation(s) * Mobius::rotation(p2);
        for (x, y) in back.entries().iter().zip(m.entries()) {
            assert!((x - y).abs() < 1e-13);
        }
        assert!((s - m.translation_length()).abs() < 1e-13);
    }

    #[test]
    fn closed_and_quadrature_distances() {
        assert_eq!(iota_dist_closed(0.0).unwrap(), 0.0);
        assert_eq!(iota_dist_quadrature(&Mobius::identity()).unwrap(), 0.0);
        for &s in &[0.5, 1.0, 2.0] {
            let q = iota_dist_quadrature(&Mobius::translation(s)).unwrap();
            assert!((q - iota_dist_closed(s).unwrap()).abs() < 1e-12);
        }
        assert!(iota_dist_closed(-1.0).is_err());
    }

    #[test]
    fn rho_of_disc_is_ellipse() {
        let m = Mobius::from_matrix(&Mat2::new(1.0, 0.5, 0.2, 1.1)).unwrap();
        let one = EvenFn::one(128).unwrap();
        let h = rho_act(&m, &one).unwrap();
        let direct = EvenFn::from_ellipse(&Ellipse::new(m.matrix()).unwrap(), 128).unwrap();
        for (x, y) in h.samples().iter().zip(direct.samples()) {
            assert!((x - y).abs() < 1e-14);
        }
        let untagged = rho_act(&m, &one.untagged()).unwrap();
        for (x, y) in untagged.samples().iter().zip(direct.samples()) {
            assert!((x - y).abs() < 1e-13);
        }
    }

    #[test]
    fn mean_support_matches_quadrature() {
        let m = Mobius::from_matrix(&Mat2::new(2.0, 0.3, -0.1, 0.6)).unwrap();
        assert!((mean_support_of(&m) - iota_cosh_quadrature(&m).unwrap()).abs() < 1e-14);
    }
}

//! Small plane-geometry helpers shared by the shape and group modules.

use nalgebra::{Matrix2, Vector2};
use std::f64::consts::TAU;

pub type Vec2 = Vector2<f64>;
pub type Mat2 = Matrix2<f64>;

/// Unit vector `(cos θ, sin θ)`.
#[inline]
pub fn unit(theta: f64) -> Vec2 {
    let (s, c) = theta.sin_cos();
    Vec2::new(c, s)
}

/// Counterclockwise quarter turn.
#[inline]
pub fn perp(v: &Vec2) -> Vec2 {
    Vec2::new(-v.y, v.x)
}

#[inline]
pub fn cross(a: &Vec2, b: &Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Angle of `v` in `[0, 2π)`.
#[inline]
pub fn angle_of(v: &Vec2) -> f64 {
    wrap_angle(v.y.atan2(v.x))
}

/// Reduces an angle to `[0, 2π)`.
#[inline]
pub fn wrap_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Singular values `(σ_max, σ_min)` of a 2×2 matrix.
pub fn singular_values(m: &Mat2) -> (f64, f64) {
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let p = (a + d).hypot(c - b);
    let q = (a - d).hypot(b + c);
    (0.5 * (p + q), 0.5 * (p - q).abs())
}

/// Unit direction minimizing `|Mᵀ u|`, i.e. the left singular vector of the
/// smallest singular value.
pub fn weakest_direction(m: &Mat2) -> Vec2 {
    // Eigenvector of the symmetric M Mᵀ for its smaller eigenvalue.
    let s = m * m.transpose();
    let (p, q, r) = (s[(0, 0)], s[(0, 1)], s[(1, 1)]);
    // Angle of the major eigenvector: tan 2φ = 2q / (p − r).
    let phi = 0.5 * (2.0 * q).atan2(p - r);
    perp(&unit(phi))
}

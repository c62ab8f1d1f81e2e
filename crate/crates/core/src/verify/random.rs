//! Seeded random inputs for the suites.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand_distr::{Distribution, LogNormal, StandardNormal};

use crate::error::Result;
use crate::geom::{Mat2, Vec2};
use crate::mobius::{HalfPlanePoint, Mobius};
use crate::supportfn::{grid_angle, EvenFn, Ellipse, Polygon};

/// Largest condition number `σ_max / σ_min` squared of random ellipses.
pub const MAX_CONDITION: f64 = 20.0;

fn rotation(phi: f64) -> Mat2 {
    let (s, c) = phi.sin_cos();
    Mat2::new(c, -s, s, c)
}

/// Unit-determinant ellipse `R(α) diag(σ, 1/σ) R(β)` with `σ²` log-uniform
/// in `[1, 20]`.
pub fn random_ellipse<R: Rng + ?Sized>(rng: &mut R) -> Ellipse {
    random_ellipse_in(rng, 1.0, MAX_CONDITION)
}

/// As [`random_ellipse`] with `σ²` log-uniform in `[kappa_min, kappa_max]`.
pub fn random_ellipse_in<R: Rng + ?Sized>(rng: &mut R, kappa_min: f64, kappa_max: f64) -> Ellipse {
    let kappa = (rng.random_range(kappa_min.ln()..=kappa_max.ln())).exp();
    let sigma = kappa.sqrt();
    let m = rotation(rng.random_range(0.0..TAU)) * Mat2::new(sigma, 0.0, 0.0, 1.0 / sigma) * rotation(rng.random_range(0.0..TAU));
    Ellipse::new(m).expect("rotations and a unit-determinant diagonal")
}

/// Symmetric convex hull of 3 to 8 random points and their reflections,
/// with log-normal radii.
pub fn random_polygon<R: Rng + ?Sized>(rng: &mut R) -> Polygon {
    let radius = LogNormal::new(0.0, 0.4).expect("valid parameters");
    loop {
        let k = rng.random_range(3..=8);
        let pts: Vec<Vec2> = (0..k)
            .map(|_| {
                let t = rng.random_range(0.0..PI);
                let r = radius.sample(rng);
                Vec2::new(r * t.cos(), r * t.sin())
            })
            .collect();
        if let Ok(p) = Polygon::symmetric_hull(&pts) {
            return p;
        }
    }
}

/// Even trigonometric polynomial with harmonics `2, 4, …, degree` and
/// coefficients of size `1/n²`, plus the constant `a0`.
pub fn random_band_limited<R: Rng + ?Sized>(rng: &mut R, grid: usize, degree: usize, a0: f64) -> Result<EvenFn> {
    let coeffs: Vec<(usize, f64, f64)> = (2..=degree)
        .step_by(2)
        .map(|n| {
            let scale = 1.0 / (n * n) as f64;
            let a: f64 = rng.sample(StandardNormal);
            let b: f64 = rng.sample(StandardNormal);
            (n, a * scale, b * scale)
        })
        .collect();
    let half = grid / 2;
    let mut samples = vec![0.0; grid];
    for j in 0..half {
        let t = grid_angle(j, grid);
        samples[j] = a0 + coeffs.iter().map(|&(n, a, b)| {
            let (s, c) = (n as f64 * t).sin_cos();
            a * c + b * s
        }).sum::<f64>();
        samples[j + half] = samples[j];
    }
    EvenFn::from_samples(samples)
}

/// Smooth random support function: a band-limited function shifted by a
/// disc until it is convex, with a little extra room.
pub fn random_smooth_body<R: Rng + ?Sized>(rng: &mut R, grid: usize) -> Result<EvenFn> {
    let h = random_band_limited(rng, grid, 12, 0.0)?;
    let split = h.support_split(true)?;
    let margin = rng.random_range(0.05..1.0);
    let c = split.c + margin;
    EvenFn::from_samples(h.samples().iter().map(|x| x + c).collect())
}

/// Ellipse, polygon or smooth body with equal odds.
pub fn random_body<R: Rng + ?Sized>(rng: &mut R, grid: usize) -> Result<EvenFn> {
    match rng.random_range(0..3) {
        0 => EvenFn::from_ellipse(&random_ellipse(rng), grid),
        1 => EvenFn::from_polygon(&random_polygon(rng), grid),
        _ => random_smooth_body(rng, grid),
    }
}

/// `R(φ₁) T_s R(φ₂)` with operator norm `e^{s/2} ≤ max_norm`.
pub fn random_mobius<R: Rng + ?Sized>(rng: &mut R, max_norm: f64) -> Mobius {
    let s = rng.random_range(0.0..=2.0 * max_norm.ln());
    Mobius::rotation(rng.random_range(0.0..TAU)) * Mobius::translation(s) * Mobius::rotation(rng.random_range(0.0..TAU))
}

/// Point with `|x| ≤ 2` and `ln y` uniform in `[−2, 2]`.
pub fn random_halfplane<R: Rng + ?Sized>(rng: &mut R) -> HalfPlanePoint {
    HalfPlanePoint::new(rng.random_range(-2.0..=2.0), rng.random_range(-2.0_f64..=2.0).exp()).expect("positive height")
}

//! Even functions on the circle and support functions of symmetric bodies.
//!
//! An [`EvenFn`] stores `M` samples at `θ_j = 2πj/M` (M divisible by 4, so
//! that 0, π/2, π, 3π/2 are grid points). The samples are canonical; the
//! trigonometric spectrum is derived on first use and cached. Functions
//! built from an exact shape carry a [`Shape`] tag, and every off-grid
//! evaluation, derivative, perimeter or boundary point then uses the
//! shape's closed form instead of interpolation.

mod doc;
mod fourier;
mod shapes;

use std::f64::consts::TAU;
use std::sync::{Arc, OnceLock};

pub use doc::ShapeDoc;
pub use fourier::Spectrum;
pub use shapes::{minkowski_sum, polygon_mixed_area_oracle, shoelace, Ellipse, Polygon, Segment, Shape};

use crate::error::{Error, Result};
use crate::geom::{perp, unit, Vec2};

/// Default number of samples.
pub const DEFAULT_GRID: usize = 2048;

const EVEN_TOL: f64 = 1e-12;
const CONVEXITY_TOL: f64 = 1e-8;
/// Share of spectral energy in the top quarter of harmonics above which
/// second derivatives are considered unresolved.
pub const TAIL_WARN_FRACTION: f64 = 0.01;

/// Grid angle `2πj/M`.
#[inline]
pub fn grid_angle(j: usize, m: usize) -> f64 {
    TAU * j as f64 / m as f64
}

pub fn check_grid(m: usize) -> Result<()> {
    if m == 0 || !m.is_multiple_of(4) {
        return Err(Error::InvalidGrid(m));
    }
    Ok(())
}

/// Even (π-periodic) function on the circle sampled on a uniform grid.
#[derive(Debug, Clone)]
pub struct EvenFn {
    samples: Vec<f64>,
    shape: Option<Shape>,
    spectrum: OnceLock<Arc<Spectrum>>,
}

impl PartialEq for EvenFn {
    fn eq(&self, other: &Self) -> bool {
        self.samples == other.samples && self.shape == other.shape
    }
}

impl EvenFn {
    /// Wraps raw samples after checking the grid, finiteness and evenness.
    pub fn from_samples(samples: Vec<f64>) -> Result<Self> {
        let m = samples.len();
        check_grid(m)?;
        if let Some(j) = samples.iter().position(|x| !x.is_finite()) {
            return Err(Error::NotEven(format!("sample {j} is not finite")));
        }
        let max = samples.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
        let tol = EVEN_TOL * (1.0 + max);
        let half = m / 2;
        for j in 0..half {
            let gap = (samples[j] - samples[j + half]).abs();
            if gap > tol {
                return Err(Error::NotEven(format!("samples {j} and {} differ by {gap:e}", j + half)));
            }
        }
        Ok(Self::raw(samples, None))
    }

    /// Samples `f(θ_j)`; `f` must be π-periodic.
    pub fn from_fn<F: Fn(f64) -> f64>(m: usize, f: F) -> Result<Self> {
        check_grid(m)?;
        Self::from_samples((0..m).map(|j| f(grid_angle(j, m))).collect())
    }

    pub(crate) fn raw(samples: Vec<f64>, shape: Option<Shape>) -> Self {
        EvenFn {
            samples,
            shape,
            spectrum: OnceLock::new(),
        }
    }

    /// Samples of an exact shape, each equal to `eval_at` at its grid angle.
    pub fn from_shape(shape: Shape, m: usize) -> Result<Self> {
        check_grid(m)?;
        let samples = (0..m).map(|j| shape.support(grid_angle(j, m))).collect();
        Ok(Self::raw(samples, Some(shape)))
    }

    /// The constant function `c`, i.e. the disc of radius `c` when `c > 0`.
    pub fn constant(m: usize, c: f64) -> Result<Self> {
        check_grid(m)?;
        let shape = (c > 0.0).then(|| Shape::Ellipse(crate::geom::Mat2::identity() * c));
        Ok(Self::raw(vec![c; m], shape))
    }

    /// The unit disc's support function `𝟏`.
    pub fn one(m: usize) -> Result<Self> {
        Self::constant(m, 1.0)
    }

    /// `|Aᵀu(θ)|`.
    pub fn from_ellipse(e: &Ellipse, m: usize) -> Result<Self> {
        Self::from_shape(Shape::from(e), m)
    }

    /// `|⟨u(θ), v⟩|`.
    pub fn from_segment(s: &Segment, m: usize) -> Result<Self> {
        Self::from_shape(Shape::from(s), m)
    }

    /// `max_v ⟨u(θ), v⟩` over the vertices.
    pub fn from_polygon(p: &Polygon, m: usize) -> Result<Self> {
        Self::from_shape(Shape::from(p), m)
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn grid(&self) -> usize {
        self.samples.len()
    }

    pub fn shape(&self) -> Option<&Shape> {
        self.shape.as_ref()
    }

    /// Drops the shape tag, keeping the samples.
    pub fn untagged(&self) -> Self {
        Self::raw(self.samples.clone(), None)
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    /// Trigonometric coefficients, computed once.
    pub fn spectrum(&self) -> &Spectrum {
        self.spectrum.get_or_init(|| Arc::new(Spectrum::from_samples(&self.samples)))
    }

    /// Alias for [`EvenFn::spectrum`].
    pub fn fourier(&self) -> &Spectrum {
        self.spectrum()
    }

    /// Value at any angle: closed form for tagged shapes, trigonometric
    /// interpolation otherwise.
    pub fn eval_at(&self, theta: f64) -> f64 {
        match &self.shape {
            Some(s) => s.support(theta),
            None => self.spectrum().eval(theta),
        }
    }

    /// `h'(θ)`, closed form when tagged.
    pub fn deriv_at(&self, theta: f64) -> f64 {
        match &self.shape {
            Some(s) => s.support_deriv(theta),
            None => self.spectrum().eval_deriv(theta),
        }
    }

    fn same_grid(&self, other: &EvenFn) -> Result<()> {
        if self.grid() != other.grid() {
            return Err(Error::GridMismatch {
                left: self.grid(),
                right: other.grid(),
            });
        }
        Ok(())
    }

    /// `c·h`; the tag follows for `c > 0`.
    pub fn scaled(&self, c: f64) -> Self {
        let shape = if c > 0.0 { self.shape.as_ref().map(|s| s.scaled(c)) } else { None };
        Self::raw(self.samples.iter().map(|x| c * x).collect(), shape)
    }

    /// `c1·h1 + c2·h2` for nonnegative coefficients: the support function
    /// of the Minkowski combination. Segment and polygon tags combine into
    /// the exact polygon of the sum.
    pub fn combine(c1: f64, h1: &EvenFn, c2: f64, h2: &EvenFn) -> Result<Self> {
        if !(c1 >= 0.0 && c2 >= 0.0) {
            return Err(Error::Domain(format!("Minkowski coefficients must be ≥ 0, got {c1}, {c2}")));
        }
        h1.same_grid(h2)?;
        let samples = h1.samples.iter().zip(&h2.samples).map(|(x, y)| c1 * x + c2 * y).collect();
        let shape = match (c1 > 0.0, c2 > 0.0, &h1.shape, &h2.shape) {
            (true, false, Some(s), _) => Some(s.scaled(c1)),
            (false, true, _, Some(s)) => Some(s.scaled(c2)),
            (true, true, Some(a), Some(b)) => Some(Shape::sum(&a.scaled(c1), &b.scaled(c2))),
            _ => None,
        };
        Ok(Self::raw(samples, shape))
    }

    /// Pointwise `h1 − h2`, a general even function.
    pub fn signed_diff(h1: &EvenFn, h2: &EvenFn) -> Result<Self> {
        Self::linear(1.0, h1, -1.0, h2)
    }

    /// Pointwise `c1·h1 + c2·h2` with arbitrary real coefficients.
    pub fn linear(c1: f64, h1: &EvenFn, c2: f64, h2: &EvenFn) -> Result<Self> {
        h1.same_grid(h2)?;
        let samples = h1.samples.iter().zip(&h2.samples).map(|(x, y)| c1 * x + c2 * y).collect();
        Ok(Self::raw(samples, None))
    }

    /// Convexity test `h'' + h ≥ 0`.
    ///
    /// Returns the flag and the minimum of `h'' + h` on the grid. Ellipses
    /// use the exact radius of curvature `det(A)² / |Aᵀu|³`; segments and
    /// polygons are support functions by construction (their curvature is
    /// concentrated at the kinks) and report zero; untagged functions are
    /// differentiated spectrally.
    pub fn is_support_function(&self) -> (bool, f64) {
        let min = match &self.shape {
            Some(shape) => (0..self.grid())
                .map(|j| shape.smooth_curvature(grid_angle(j, self.grid())))
                .fold(f64::INFINITY, f64::min),
            None => self.curvature_samples().into_iter().fold(f64::INFINITY, f64::min),
        };
        let tol = CONVEXITY_TOL * (1.0 + self.max_abs());
        (min >= -tol, min)
    }

    /// `h'' + h` on the grid by spectral differentiation.
    pub fn curvature_samples(&self) -> Vec<f64> {
        self.spectrum().synthesize_weighted(|n| 1.0 - (n * n) as f64)
    }

    /// Fraction of the non-constant spectral energy carried by the top
    /// quarter of harmonics.
    pub fn spectral_tail_fraction(&self) -> f64 {
        let s = self.spectrum();
        let total = s.energy_from(1);
        if total == 0.0 {
            return 0.0;
        }
        let cut = 3 * s.nyquist() / 4 + 1;
        s.energy_from(cut) / total
    }

    /// Writes `h = s1 − s2` with both sides support functions:
    /// `s1 = h + c𝟏`, `s2 = c𝟏`, `c = max(0, −min(h'' + h))`.
    ///
    /// An unresolved spectrum is logged, or rejected when `strict`.
    pub fn support_split(&self, strict: bool) -> Result<SupportSplit> {
        let tail = self.spectral_tail_fraction();
        if tail > TAIL_WARN_FRACTION {
            if strict {
                return Err(Error::SpectralTail { fraction: tail });
            }
            log::warn!("support_split: {:.2}% of spectral energy in the top quarter", 100.0 * tail);
        }
        let (_, min) = self.is_support_function();
        let c = (-min).max(0.0);
        let m = self.grid();
        if c == 0.0 {
            return Ok(SupportSplit {
                c,
                s1: self.clone(),
                s2: Self::raw(vec![0.0; m], None),
                tail_fraction: tail,
            });
        }
        let disc = Self::constant(m, c)?;
        let s1 = Self::raw(self.samples.iter().map(|x| x + c).collect(), None);
        Ok(SupportSplit {
            c,
            s1,
            s2: disc,
            tail_fraction: tail,
        })
    }

    /// Boundary of the body as a closed polyline, sampled at `n_points`
    /// uniformly spaced normal directions:
    /// `c(θ) = h(θ)u(θ) + h'(θ)u(θ)⊥`.
    pub fn boundary_curve(&self, n_points: usize) -> Result<Vec<Vec2>> {
        if n_points < 3 {
            return Err(Error::Domain(format!("need at least 3 boundary points, got {n_points}")));
        }
        let (ok, min) = self.is_support_function();
        if !ok {
            return Err(Error::NotSupportFunction(min));
        }
        let mut pts: Vec<Vec2> = (0..n_points)
            .map(|k| {
                let theta = grid_angle(k, n_points);
                match &self.shape {
                    Some(s) => s.boundary_point(theta),
                    None => {
                        let u = unit(theta);
                        let s = self.spectrum();
                        u * s.eval(theta) + perp(&u) * s.eval_deriv(theta)
                    }
                }
            })
            .collect();
        pts.dedup();
        if pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        Ok(pts)
    }
}

/// Result of [`EvenFn::support_split`].
#[derive(Debug, Clone)]
pub struct SupportSplit {
    pub c: f64,
    pub s1: EvenFn,
    pub s2: EvenFn,
    pub tail_fraction: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Mat2;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn grid_must_be_multiple_of_four() {
        assert!(matches!(EvenFn::one(30), Err(Error::InvalidGrid(30))));
        assert!(EvenFn::one(32).is_ok());
    }

    #[test]
    fn odd_samples_are_rejected() {
        let r = EvenFn::from_fn(64, |t| t.cos());
        assert!(matches!(r, Err(Error::NotEven(_))));
        assert!(EvenFn::from_samples(vec![f64::NAN; 8]).is_err());
    }

    #[test]
    fn ellipse_samples() {
        let e = Ellipse::new(Mat2::new(2.0, 0.0, 0.0, 0.5)).unwrap();
        let h = EvenFn::from_ellipse(&e, 64).unwrap();
        assert!((h.samples()[0] - 2.0).abs() < 1e-15);
        assert!((h.samples()[16] - 0.5).abs() < 1e-15);
        let expected = 17f64.sqrt() / (2.0 * 2f64.sqrt());
        assert!((h.eval_at(FRAC_PI_4) - expected).abs() < 1e-15);
    }

    #[test]
    fn disc_is_constant() {
        let h = EvenFn::from_ellipse(&Ellipse::identity(), 32).unwrap();
        assert!(h.samples().iter().all(|&x| (x - 1.0).abs() < 1e-15));
        assert_eq!(h.eval_at(1.2345), 1.0);
    }

    #[test]
    fn segment_samples_are_abs_cos() {
        let s = Segment::new(Vec2::new(1.0, 0.0)).unwrap();
        let h = EvenFn::from_segment(&s, 64).unwrap();
        for (j, x) in h.samples().iter().enumerate() {
            assert!((x - grid_angle(j, 64).cos().abs()).abs() < 1e-15);
        }
    }

    #[test]
    fn combine_and_difference() {
        let m = 64;
        let a = EvenFn::from_ellipse(&Ellipse::new(Mat2::new(2.0, 0.0, 0.0, 0.5)).unwrap(), m).unwrap();
        let b = EvenFn::one(m).unwrap();
        let c = EvenFn::combine(1.0, &a, 0.0, &b).unwrap();
        assert_eq!(c.samples(), a.samples());
        assert_eq!(c.shape(), a.shape());
        let d = EvenFn::signed_diff(&a, &a).unwrap();
        assert!(d.samples().iter().all(|&x| x == 0.0));
        assert!(EvenFn::combine(-1.0, &a, 1.0, &b).is_err());
        assert!(matches!(
            EvenFn::combine(1.0, &a, 1.0, &EvenFn::one(32).unwrap()),
            Err(Error::GridMismatch { .. })
        ));
    }

    #[test]
    fn cos2_is_not_support_function_until_shifted() {
        let h = EvenFn::from_fn(256, |t| (2.0 * t).cos()).unwrap();
        let (ok, min) = h.is_support_function();
        assert!(!ok);
        assert!((min + 3.0).abs() < 1e-10, "{min}");
        let split = h.support_split(true).unwrap();
        assert!((split.c - 3.0).abs() < 1e-10);
        assert!(split.s1.is_support_function().0);
        assert!(split.s2.is_support_function().0);
        let back = EvenFn::signed_diff(&split.s1, &split.s2).unwrap();
        for (x, y) in back.samples().iter().zip(h.samples()) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn support_function_is_left_alone() {
        let h = EvenFn::one(64).unwrap();
        assert_eq!(h.is_support_function(), (true, 1.0));
        let split = h.support_split(false).unwrap();
        assert_eq!(split.c, 0.0);
        assert_eq!(split.s1, h);
    }

    #[test]
    fn strict_mode_rejects_unresolved_spectrum() {
        // Noise-like samples: most energy sits at high harmonics.
        let m = 64;
        let h = EvenFn::from_fn(m, |t| if ((t / (2.0 * PI / m as f64)).round() as i64) % 2 == 0 { 1.0 } else { 0.0 }).unwrap();
        assert!(matches!(h.support_split(true), Err(Error::SpectralTail { .. })));
        assert!(h.support_split(false).is_ok());
    }

    #[test]
    fn unit_circle_boundary() {
        let pts = EvenFn::one(64).unwrap().boundary_curve(100).unwrap();
        assert_eq!(pts.len(), 100);
        for p in pts {
            assert!((p.norm() - 1.0).abs() < 1e-15);
        }
        let bad = EvenFn::from_fn(64, |t| (2.0 * t).cos()).unwrap();
        assert!(matches!(bad.boundary_curve(10), Err(Error::NotSupportFunction(_))));
    }

    #[test]
    fn tags_follow_scaling() {
        let h = EvenFn::from_segment(&Segment::new(Vec2::new(0.0, 1.0)).unwrap(), 32).unwrap();
        let s = h.scaled(2.0);
        assert_eq!(s.shape(), Some(&Shape::Segment(Vec2::new(0.0, 2.0))));
        assert!((s.eval_at(FRAC_PI_2) - 2.0).abs() < 1e-15);
        assert!(h.scaled(0.0).shape().is_none());
    }
}

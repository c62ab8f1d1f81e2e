//! The limit set of the disc orbit and its visual metric.
//!
//! Normalized ellipses degenerate to segments, so the boundary points are
//! the direction classes of the projective line. Seen from the disc, two
//! classes at angle δ ∈ [0, π/2] are at visual distance `(√π/2)·√(sin δ)`.
//! For small δ that is a power ½ of the round metric, which doubles the
//! Hausdorff dimension of the circle.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{unit, Mat2, Vec2};
use crate::lorentz::{acosh1p, shape_form};
use crate::supportfn::{EvenFn, Shape};

/// Largest radius accepted by the Gromov-product estimator.
pub const GROMOV_MAX_RADIUS: f64 = 15.0;

/// Direction class, an angle in `[0, π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BoundaryDir(f64);

impl BoundaryDir {
    /// Reduces any finite angle modulo π.
    pub fn new(theta: f64) -> Self {
        let t = theta.rem_euclid(PI);
        BoundaryDir(if t >= PI { 0.0 } else { t })
    }

    pub fn theta(&self) -> f64 {
        self.0
    }

    /// Unit representative `(cos θ, sin θ)`.
    pub fn unit(&self) -> Vec2 {
        unit(self.0)
    }

    /// `self + phi` as a class.
    pub fn rotated(&self, phi: f64) -> Self {
        Self::new(self.0 + phi)
    }
}

/// Angle between two classes, in `[0, π/2]`.
pub fn angle_between(d1: BoundaryDir, d2: BoundaryDir) -> f64 {
    let diff = (d1.0 - d2.0).abs();
    diff.min(PI - diff)
}

/// Segment of length π in the direction of `d`: its support function
/// `(π/2)|⟨u, v⟩|` is isotropic with mean one.
pub fn boundary_rep(d: BoundaryDir, grid: usize) -> Result<EvenFn> {
    EvenFn::from_shape(boundary_shape(d), grid)
}

fn boundary_shape(d: BoundaryDir) -> Shape {
    Shape::Segment(d.unit() * FRAC_PI_2)
}

/// Visual distance `(√π/2)·√(sin δ)` seen from the disc.
pub fn visual_dist(d1: BoundaryDir, d2: BoundaryDir) -> f64 {
    MetricProfile::Visual.distance(angle_between(d1, d2))
}

/// The same distance as `½√𝐀(v₁ + v₂)` for the mean-one representatives,
/// with the mixed terms integrated numerically from the closed forms.
pub fn visual_dist_via_form(d1: BoundaryDir, d2: BoundaryDir) -> f64 {
    let (a, b) = (boundary_shape(d1), boundary_shape(d2));
    let form = shape_form(&a, &a) + 2.0 * shape_form(&a, &b) + shape_form(&b, &b);
    0.5 * form.max(0.0).sqrt()
}

/// Area-π ellipse `R_θ · diag(e^{r/2}, e^{−r/2})`, at distance `r` from
/// the disc in the hyperbolic plane and escaping toward `d`.
pub fn ray_toward(d: BoundaryDir, r: f64) -> Shape {
    let (s, c) = d.theta().sin_cos();
    let rot = Mat2::new(c, -s, s, c);
    Shape::Ellipse(rot * Mat2::new((0.5 * r).exp(), 0.0, 0.0, (-0.5 * r).exp()))
}

fn shape_dist(a: &Shape, b: &Shape) -> f64 {
    acosh1p((shape_form(a, b) - 1.0).max(0.0))
}

/// `exp(−⟨p, q⟩_𝟏)` with `p, q` at radius `r` on the rays toward `d1, d2`,
/// where `⟨p, q⟩_𝟏 = ½(d(p, 𝟏) + d(q, 𝟏) − d(p, q))`.
pub fn gromov_visual(d1: BoundaryDir, d2: BoundaryDir, r: f64) -> Result<f64> {
    if !(r > 0.0 && r <= GROMOV_MAX_RADIUS) {
        return Err(Error::Domain(format!("radius {r} outside (0, {GROMOV_MAX_RADIUS}]")));
    }
    let disc = Shape::Ellipse(Mat2::identity());
    let (p, q) = (ray_toward(d1, r), ray_toward(d2, r));
    let gromov = 0.5 * (shape_dist(&p, &disc) + shape_dist(&q, &disc) - shape_dist(&p, &q));
    Ok((-gromov).exp())
}

/// [`gromov_visual`] along increasing radii; fails if the points do not
/// move away from the disc.
pub fn gromov_visual_sequence(d1: BoundaryDir, d2: BoundaryDir, radii: &[f64]) -> Result<Vec<f64>> {
    let disc = Shape::Ellipse(Mat2::identity());
    let mut last = f64::NEG_INFINITY;
    for &r in radii {
        let dist = shape_dist(&ray_toward(d1, r), &disc).min(shape_dist(&ray_toward(d2, r), &disc));
        if !(dist > last) {
            return Err(Error::Domain(format!("sequence does not escape: d = {dist} at radius {r}")));
        }
        last = dist;
    }
    radii.iter().map(|&r| gromov_visual(d1, d2, r)).collect()
}

/// Metric on direction classes as a function of the angle δ ∈ [0, π/2].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricProfile {
    /// `(√π/2)·√(sin δ)`.
    Visual,
    /// `δ` itself.
    RoundAngle,
    /// `λ·δᵗ`.
    PowerLaw { lambda: f64, t: f64 },
}

impl MetricProfile {
    pub fn distance(&self, delta: f64) -> f64 {
        match *self {
            MetricProfile::Visual => 0.5 * PI.sqrt() * delta.sin().sqrt(),
            MetricProfile::RoundAngle => delta,
            MetricProfile::PowerLaw { lambda, t } => lambda * delta.powf(t),
        }
    }

    /// Largest angle whose distance is at most `eps`, capped at π/2.
    pub fn angular_radius(&self, eps: f64) -> f64 {
        let delta = match *self {
            MetricProfile::Visual => (4.0 * eps * eps / PI).min(1.0).asin(),
            MetricProfile::RoundAngle => eps,
            MetricProfile::PowerLaw { lambda, t } => (eps / lambda).powf(1.0 / t),
        };
        delta.min(FRAC_PI_2)
    }

    fn validate(&self) -> Result<()> {
        if let MetricProfile::PowerLaw { lambda, t } = *self {
            if !(lambda > 0.0 && t > 0.0 && t <= 1.0) {
                return Err(Error::Domain(format!("power law needs λ > 0 and 0 < t ≤ 1, got {lambda}, {t}")));
            }
        }
        Ok(())
    }
}

/// Minimal number of visual ε-balls covering the limit set.
pub fn covering_number(eps: f64) -> Result<u64> {
    covering_number_with(MetricProfile::Visual, eps)
}

/// Minimal number of ε-balls covering the projective line (length π) for
/// a metric increasing in the angle: each ball is an arc of half-width
/// `δ_ε`.
pub fn covering_number_with(profile: MetricProfile, eps: f64) -> Result<u64> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("covering radius must be positive, got {eps}")));
    }
    profile.validate()?;
    if eps >= profile.distance(FRAC_PI_2) {
        return Ok(1);
    }
    let delta = profile.angular_radius(eps);
    Ok((PI / (2.0 * delta)).ceil().max(1.0) as u64)
}

/// Least-squares fit of `ln N(ε)` against `ln(1/ε)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DimEstimate {
    pub slope: f64,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
    /// `(ε, N(ε))` pairs used in the fit.
    pub points: Vec<(f64, u64)>,
}

fn check_scales(j_min: u32, j_max: u32) -> Result<()> {
    if !(j_min >= 2 && j_max > j_min && j_max <= 40) {
        return Err(Error::Domain(format!("need 2 ≤ j_min < j_max ≤ 40, got {j_min}, {j_max}")));
    }
    Ok(())
}

fn fit(points: Vec<(f64, u64)>) -> Result<DimEstimate> {
    if points.len() < 2 {
        return Err(Error::Domain("at least two scales are needed for a slope".into()));
    }
    let xy: Vec<(f64, f64)> = points.iter().map(|&(e, n)| (-e.ln(), (n as f64).ln())).collect();
    let k = xy.len() as f64;
    let (mx, my) = (xy.iter().map(|p| p.0).sum::<f64>() / k, xy.iter().map(|p| p.1).sum::<f64>() / k);
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let residual = (xy.iter().map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2)).sum::<f64>() / k).sqrt();
    Ok(DimEstimate { slope, residual, points })
}

/// Slope of the analytic covering numbers over `ε_j = 2^{−j}`.
pub fn hausdorff_dim_estimate(j_min: u32, j_max: u32) -> Result<DimEstimate> {
    hausdorff_dim_estimate_with(MetricProfile::Visual, j_min, j_max)
}

pub fn hausdorff_dim_estimate_with(profile: MetricProfile, j_min: u32, j_max: u32) -> Result<DimEstimate> {
    check_scales(j_min, j_max)?;
    let points = (j_min..=j_max)
        .map(|j| {
            let eps = 0.5_f64.powi(j as i32);
            covering_number_with(profile, eps).map(|n| (eps, n))
        })
        .collect::<Result<Vec<_>>>()?;
    fit(points)
}

/// Insertion radii of a farthest-point traversal of `samples` random
/// directions: after `k` centers every sample lies within `radii[k]`
/// (angle) of a center. One traversal yields covering counts at all scales.
pub fn farthest_point_radii(samples: usize, seed: u64) -> Result<Vec<f64>> {
    if samples < 2 {
        return Err(Error::Domain("need at least two sampled directions".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut angles: Vec<f64> = (0..samples).map(|_| rng.random_range(0.0..PI)).collect();
    angles.sort_by(f64::total_cmp);

    // Cyclic gap between centers at sorted positions `l` and `r` (walking
    // forward from `l`). Its key is the best insertion radius inside.
    #[derive(PartialEq)]
    struct Gap {
        key: f64,
        l: usize,
        r: usize,
        best: usize,
    }
    impl Eq for Gap {}
    impl PartialOrd for Gap {
        fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
            Some(self.cmp(other))
        }
    }
    impl Ord for Gap {
        fn cmp(&self, other: &Self) -> Ordering {
            self.key.total_cmp(&other.key).then_with(|| other.l.cmp(&self.l))
        }
    }

    let n = samples;
    // Unwrapped position of sorted index `l + k`.
    let pos = |l: usize, k: usize| -> f64 {
        let i = l + k;
        if i < n {
            angles[i]
        } else {
            angles[i - n] + PI
        }
    };
    let make_gap = |l: usize, r: usize| -> Option<Gap> {
        // Number of steps from l to r going forward; r == l means the full circle.
        let span = if r > l { r - l } else { r + n - l };
        if span < 2 {
            return None;
        }
        let (a, b) = (pos(l, 0), pos(l, span));
        let mid = 0.5 * (a + b);
        // Binary search for the last interior point at or below the midpoint.
        let (mut lo, mut hi) = (1usize, span - 1);
        while lo < hi {
            let m = (lo + hi).div_ceil(2);
            if pos(l, m) <= mid {
                lo = m;
            } else {
                hi = m - 1;
            }
        }
        let score = |k: usize| (pos(l, k) - a).min(b - pos(l, k));
        let mut best = lo;
        if lo + 1 < span && score(lo + 1) > score(lo) {
            best = lo + 1;
        }
        Some(Gap {
            key: score(best),
            l,
            r,
            best: (l + best) % n,
        })
    };

    let mut radii = Vec::with_capacity(n);
    let mut heap = BinaryHeap::new();
    if let Some(g) = make_gap(0, 0) {
        heap.push(g);
    }
    // With one center the farthest sample is at most π/2 away.
    while let Some(g) = heap.pop() {
        radii.push(g.key.min(FRAC_PI_2));
        heap.extend(make_gap(g.l, g.best));
        heap.extend(make_gap(g.best, g.r));
    }
    radii.push(0.0);
    Ok(radii)
}

/// Greedy covering count at `eps`: the number of farthest-point centers
/// after which every sample is within `eps`.
pub fn greedy_count(radii: &[f64], profile: MetricProfile, eps: f64) -> u64 {
    let delta = profile.angular_radius(eps);
    // radii is nonincreasing; radii[k] is the covering radius with k + 1 centers.
    let k = radii.partition_point(|&r| r > delta);
    (k + 1) as u64
}

/// Slope of greedy covering counts on `samples` seeded random directions.
///
/// Scales whose analytic count exceeds `samples / 20` are skipped: there a
/// finite sample no longer resolves the balls.
pub fn empirical_dim_estimate(
    profile: MetricProfile,
    j_min: u32,
    j_max: u32,
    samples: usize,
    seed: u64,
) -> Result<DimEstimate> {
    check_scales(j_min, j_max)?;
    profile.validate()?;
    let radii = farthest_point_radii(samples, seed)?;
    let cap = (samples / 20) as u64;
    let mut points = Vec::new();
    for j in j_min..=j_max {
        let eps = 0.5_f64.powi(j as i32);
        if covering_number_with(profile, eps)? > cap {
            break;
        }
        points.push((eps, greedy_count(&radii, profile, eps)));
    }
    fit(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::form_a_best;

    #[test]
    fn classes_wrap_modulo_pi() {
        assert!((BoundaryDir::new(PI + 0.25).theta() - 0.25).abs() < 1e-15);
        assert_eq!(BoundaryDir::new(-PI).theta(), 0.0);
        assert!((angle_between(BoundaryDir::new(0.1), BoundaryDir::new(3.0)) - (PI - 2.9)).abs() < 1e-15);
    }

    #[test]
    fn representative_is_isotropic_with_unit_mean() {
        let v = boundary_rep(BoundaryDir::new(0.0), 256).unwrap();
        assert!((crate::lorentz::pi0(&v) - 1.0).abs() < 1e-15);
        assert!(form_a_best(&v, &v).unwrap().abs() < 1e-15);
        assert!((v.samples()[0] - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn perpendicular_classes() {
        let d = visual_dist(BoundaryDir::new(0.0), BoundaryDir::new(FRAC_PI_2));
        assert!((d - 0.886_226_925_452_758).abs() < 1e-15);
        let via = visual_dist_via_form(BoundaryDir::new(0.0), BoundaryDir::new(FRAC_PI_2));
        assert!((via - d).abs() < 1e-12);
        assert_eq!(visual_dist(BoundaryDir::new(1.0), BoundaryDir::new(1.0)), 0.0);
    }

    #[test]
    fn gromov_estimator_approaches_visual_distance() {
        let (a, b) = (BoundaryDir::new(0.2), BoundaryDir::new(1.3));
        let g = gromov_visual(a, b, 15.0).unwrap();
        assert!((g / visual_dist(a, b) - 1.0).abs() < 1e-2);
        assert!(gromov_visual(a, b, 20.0).is_err());
        assert!(gromov_visual(a, a, 10.0).unwrap() < 1e-2);
    }

    #[test]
    fn covering_counts() {
        assert_eq!(covering_number(1.0).unwrap(), 1);
        assert_eq!(covering_number(0.5 * PI.sqrt()).unwrap(), 1);
        assert!(covering_number(0.0).is_err());
        let eps = 1e-3;
        let n = covering_number(eps).unwrap() as f64;
        assert!((n * eps * eps - PI * PI / 8.0).abs() < 1e-3);
    }

    #[test]
    fn dimension_slopes() {
        let v = hausdorff_dim_estimate(4, 12).unwrap();
        assert!((v.slope - 2.0).abs() < 0.02, "{}", v.slope);
        let r = hausdorff_dim_estimate_with(MetricProfile::RoundAngle, 4, 12).unwrap();
        assert!((r.slope - 1.0).abs() < 0.01);
        assert!(hausdorff_dim_estimate(5, 5).is_err());
    }

    #[test]
    fn farthest_point_radii_decrease() {
        let radii = farthest_point_radii(1000, 3).unwrap();
        assert_eq!(radii.len(), 1000);
        assert!(radii.windows(2).all(|w| w[0] >= w[1]));
        assert_eq!(*radii.last().unwrap(), 0.0);
    }
}

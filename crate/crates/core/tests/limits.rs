use std::f64::consts::{FRAC_PI_2, PI};

use hypkonvex::limits::{
    angle_between, boundary_rep, covering_number, covering_number_with, empirical_dim_estimate, farthest_point_radii,
    gromov_visual, gromov_visual_sequence, greedy_count, hausdorff_dim_estimate, hausdorff_dim_estimate_with,
    visual_dist, visual_dist_via_form, MetricProfile, GROMOV_MAX_RADIUS,
};
use hypkonvex::lorentz::{form_a, form_a_best, pi0};
use hypkonvex::BoundaryDir;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dir(t: f64) -> BoundaryDir {
    BoundaryDir::new(t)
}

#[test]
fn representative_at_zero() {
    let v = boundary_rep(dir(0.0), 512).unwrap();
    for (j, x) in v.samples().iter().enumerate() {
        let t = std::f64::consts::TAU * j as f64 / 512.0;
        assert!((x - FRAC_PI_2 * t.cos().abs()).abs() < 1e-15);
    }
    assert!((pi0(&v) - 1.0).abs() < 1e-15);
    assert!(form_a_best(&v, &v).unwrap().abs() < 1e-10);
    // The spectral form converges slowly on kinks.
    let coarse = form_a(&v.untagged(), &v.untagged()).unwrap().abs();
    let fine = form_a(&boundary_rep(dir(0.0), 4096).unwrap(), &boundary_rep(dir(0.0), 4096).unwrap()).unwrap().abs();
    assert!(fine < coarse && fine < 1e-2, "{coarse} {fine}");
    let end = v.shape().unwrap().boundary_point(0.0);
    assert!((2.0 * end.norm() - PI).abs() < 1e-15);
}

#[test]
fn visual_examples() {
    assert_eq!(visual_dist(dir(0.4), dir(0.4)), 0.0);
    let perp = visual_dist(dir(0.3), dir(0.3 + FRAC_PI_2));
    assert!((perp - 0.886_226_925_4).abs() < 1e-10);
    // Classes are taken modulo π, and the angle between them is at most π/2.
    assert!(visual_dist(dir(0.1), dir(0.1 + PI)) < 1e-7);
    assert!((angle_between(dir(0.0), dir(3.0)) - (PI - 3.0)).abs() < 1e-15);
}

#[test]
fn two_formulas_agree_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let (a, b) = (dir(rng.random_range(0.0..PI)), dir(rng.random_range(0.0..PI)));
        assert!((visual_dist(a, b) - visual_dist_via_form(a, b)).abs() < 1e-9);
    }
}

#[test]
fn metric_axioms_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..10_000 {
        let [a, b, c] = [(); 3].map(|_| dir(rng.random_range(0.0..PI)));
        assert_eq!(visual_dist(a, b), visual_dist(b, a));
        assert!(visual_dist(a, b) + visual_dist(b, c) - visual_dist(a, c) >= -1e-12);
    }
}

#[test]
fn gromov_ratios_match() {
    let ds = [dir(0.2), dir(0.9), dir(2.1)];
    let g: Vec<f64> = [(0, 1), (1, 2), (0, 2)].iter().map(|&(i, j)| gromov_visual(ds[i], ds[j], 15.0).unwrap()).collect();
    let v: Vec<f64> = [(0, 1), (1, 2), (0, 2)].iter().map(|&(i, j)| visual_dist(ds[i], ds[j])).collect();
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        assert!(((g[i] / g[j]) / (v[i] / v[j]) - 1.0).abs() < 0.02);
    }
}

#[test]
fn gromov_stabilizes() {
    let seq = gromov_visual_sequence(dir(0.2), dir(1.3), &[10.0, 12.0, 15.0]).unwrap();
    for w in seq.windows(2) {
        assert!((w[1] / w[0] - 1.0).abs() < 0.01);
    }
    assert!(gromov_visual_sequence(dir(0.2), dir(1.3), &[12.0, 10.0]).is_err());
    assert!(gromov_visual(dir(0.2), dir(1.3), GROMOV_MAX_RADIUS + 1.0).is_err());
    assert!(gromov_visual(dir(0.2), dir(1.3), 0.0).is_err());
    assert!(gromov_visual(dir(0.5), dir(0.5), 15.0).unwrap() < 1e-3);
}

#[test]
fn covering_examples() {
    assert_eq!(covering_number(0.5 * PI.sqrt()).unwrap(), 1);
    assert_eq!(covering_number(5.0).unwrap(), 1);
    assert!(covering_number(-1.0).is_err());
    for j in 6..=12 {
        let a = covering_number(0.5_f64.powi(j)).unwrap() as f64;
        let b = covering_number(0.5_f64.powi(j + 1)).unwrap() as f64;
        assert!((a.log2() - b.log2() + 2.0).abs() < 0.01, "j = {j}");
    }
    let eps = 1e-4;
    let n = covering_number(eps).unwrap() as f64;
    assert!((n * eps * eps / (PI * PI / 8.0) - 1.0).abs() < 1e-6);
}

#[test]
fn dimension_estimates() {
    let v = hausdorff_dim_estimate(4, 12).unwrap();
    assert!((1.98..=2.02).contains(&v.slope));
    assert_eq!(v.points.len(), 9);
    let r = hausdorff_dim_estimate_with(MetricProfile::RoundAngle, 4, 12).unwrap();
    assert!((0.99..=1.01).contains(&r.slope));
    let half = |lambda| hausdorff_dim_estimate_with(MetricProfile::PowerLaw { lambda, t: 0.5 }, 4, 12).unwrap().slope;
    assert!((half(1.0) - half(5.0)).abs() < 0.01);
    assert!(hausdorff_dim_estimate(4, 4).is_err());
    assert!(hausdorff_dim_estimate(1, 5).is_err());
    assert!(hausdorff_dim_estimate_with(MetricProfile::PowerLaw { lambda: -1.0, t: 0.5 }, 4, 8).is_err());
}

#[test]
fn empirical_dimension_tracks_analytic() {
    let analytic = hausdorff_dim_estimate(2, 12).unwrap().slope;
    let empirical = empirical_dim_estimate(MetricProfile::Visual, 2, 12, 100_000, 3).unwrap();
    assert!((empirical.slope - analytic).abs() < 0.1, "{} vs {analytic}", empirical.slope);
}

#[test]
fn farthest_point_radii_cover() {
    let radii = farthest_point_radii(2000, 5).unwrap();
    assert_eq!(radii.len(), 2000);
    assert!(radii.windows(2).all(|w| w[1] <= w[0]));
    assert_eq!(*radii.last().unwrap(), 0.0);
    assert_eq!(greedy_count(&radii, MetricProfile::RoundAngle, 10.0), 1);
    assert!(farthest_point_radii(1, 5).is_err());
}

proptest! {
    #[test]
    fn rotation_invariance(a in 0.0..PI, b in 0.0..PI, phi in -10.0..10.0_f64) {
        let before = visual_dist(dir(a), dir(b));
        let after = visual_dist(dir(a).rotated(phi), dir(b).rotated(phi));
        prop_assert!((before - after).abs() < 1e-7 * before.max(1e-7));
        prop_assert!((visual_dist(dir(a), dir(b)) - visual_dist(dir(b), dir(a))).abs() == 0.0);
    }

    #[test]
    fn classes_live_in_half_turn(t in -100.0..100.0_f64) {
        let d = dir(t);
        prop_assert!((0.0..PI).contains(&d.theta()));
        prop_assert!(angle_between(d, dir(t + PI)) < 1e-12);
    }

    #[test]
    fn covering_is_monotone(e in 1e-4..1.0_f64) {
        prop_assert!(covering_number(e).unwrap() >= covering_number(2.0 * e).unwrap());
        for profile in [MetricProfile::Visual, MetricProfile::RoundAngle] {
            let n = covering_number_with(profile, e).unwrap() as f64;
            // n arcs of angular half-width δ_ε cover the half turn, n − 1 do not.
            let delta = profile.angular_radius(e);
            prop_assert!(2.0 * delta * n >= PI - 1e-12);
            prop_assert!(n == 1.0 || 2.0 * delta * (n - 1.0) < PI);
        }
    }
}

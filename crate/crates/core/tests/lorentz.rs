mod common;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use common::{golden_section, rel, sup_diff};
use hypkonvex::geom::{Mat2, Vec2};
use hypkonvex::lorentz::{
    acosh1p, cosh_dist, dist_between_bodies, form_a, form_a_best, geodesic_point, h1_seminorms, hyper_dist, normalize,
    pi0, pi0_samples, project_disc_to_segment_geodesic, segment_geodesic_pi0_excess, segment_geodesic_point,
};
use hypkonvex::mobius::{iota, iota_dist_quadrature, Mobius};
use hypkonvex::supportfn::{Ellipse, Polygon, Segment};
use hypkonvex::verify::{case_rng, random, Suite};
use hypkonvex::{BoundaryDir, Error, EvenFn, HPoint, HalfPlanePoint};
use proptest::prelude::*;

fn square(m: usize) -> EvenFn {
    let p = Polygon::new(vec![Vec2::new(1.0, 1.0), Vec2::new(-1.0, 1.0), Vec2::new(-1.0, -1.0), Vec2::new(1.0, -1.0)]).unwrap();
    EvenFn::from_polygon(&p, m).unwrap()
}

fn ellipse_point(seed: u64, case: usize, m: usize) -> HPoint {
    let mut rng = case_rng(seed, Suite::Equivariance, case);
    normalize(&EvenFn::from_ellipse(&random::random_ellipse(&mut rng), m).unwrap()).unwrap()
}

#[test]
fn form_examples() {
    let one = EvenFn::one(1024).unwrap();
    assert!((form_a(&one, &one).unwrap() - 1.0).abs() < 1e-15);
    let sq = square(4096).untagged();
    assert!(rel(form_a(&sq, &sq).unwrap(), 4.0 / PI) < 1e-2);
    let mut rng = case_rng(1, Suite::Minkowski, 7);
    for _ in 0..20 {
        let h = random::random_body(&mut rng, 1024).unwrap();
        assert!((form_a(&h, &one).unwrap() - pi0_samples(&h)).abs() < 1e-12 * pi0(&h));
        assert!((form_a_best(&h, &one).unwrap() - pi0(&h)).abs() < 1e-10 * pi0(&h));
    }
    assert!(form_a(&one, &EvenFn::one(128).unwrap()).is_err());
}

#[test]
fn pi0_examples() {
    assert_eq!(pi0(&EvenFn::one(64).unwrap()), 1.0);
    assert!((pi0(&square(256)) - 4.0 / PI).abs() < 1e-14);
    let seg = EvenFn::from_segment(&Segment::new(Vec2::new(1.0, 0.0)).unwrap(), 256).unwrap();
    assert!((pi0(&seg) - 2.0 / PI).abs() < 1e-15);
    // Untagged samples: the grid mean, second order in the kinks.
    assert!((pi0(&seg.untagged()) - 2.0 / PI).abs() < 1e-4);
}

#[test]
fn seminorm_examples() {
    let (l2, dl2) = h1_seminorms(&EvenFn::one(64).unwrap());
    assert!((l2 - TAU).abs() < 1e-13 && dl2.abs() < 1e-13);
    let (l2, dl2) = h1_seminorms(&EvenFn::from_fn(64, |t| (2.0 * t).cos()).unwrap());
    assert!((l2 - PI).abs() < 1e-13 && (dl2 - 4.0 * PI).abs() < 1e-12);
    let mut rng = case_rng(2, Suite::Wirtinger, 0);
    for _ in 0..20 {
        let h = random::random_band_limited(&mut rng, 512, 20, 1.3).unwrap();
        let (l2, dl2) = h1_seminorms(&h);
        assert!(((l2 - dl2) / TAU - form_a(&h, &h).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn normalize_examples() {
    let one = EvenFn::one(128).unwrap();
    assert!(sup_diff(normalize(&one).unwrap().as_fn(), &one) < 1e-15);
    assert!(sup_diff(normalize(&one.scaled(2.0)).unwrap().as_fn(), &one) < 1e-15);
    let sq = square(128);
    let n = normalize(&sq).unwrap();
    assert!(sup_diff(n.as_fn(), &sq.scaled(PI.sqrt() / 2.0)) < 1e-14);
    let seg = EvenFn::from_segment(&Segment::new(Vec2::new(1.0, 0.0)).unwrap(), 128).unwrap();
    assert!(matches!(normalize(&seg), Err(Error::NonPositiveArea(_))));
}

#[test]
fn distance_examples() {
    let p = ellipse_point(4, 0, 512);
    assert_eq!(hyper_dist(&p, &p).unwrap(), 0.0);
    // Disc against the translated disc, by the defining quadrature.
    let z = HalfPlanePoint::new(0.0, 1f64.exp()).unwrap();
    let d = hyper_dist(&HPoint::origin(512).unwrap(), &iota(&z, 512).unwrap()).unwrap();
    assert!((d - iota_dist_quadrature(&Mobius::translation(1.0)).unwrap()).abs() < 1e-12);
    assert!((d - 0.605_023_085_347_696_8).abs() < 1e-12);
}

#[test]
fn square_to_disc_distance() {
    let d = dist_between_bodies(&EvenFn::one(256).unwrap(), &square(256)).unwrap();
    assert!((d - (2.0 / PI.sqrt()).acosh()).abs() < 1e-14);
    assert!((d - 0.501_443_166_633_396_6).abs() < 1e-14);
}

#[test]
fn clamping_policy() {
    let one = HPoint::origin(64).unwrap();
    assert_eq!(cosh_dist(&one, &one).unwrap(), 1.0);
    // Bypass normalization to exercise the guard.
    let below = EvenFn::from_samples(vec![1.0 - 1e-13; 64]).unwrap();
    let p = HPoint::new(below).unwrap();
    assert_eq!(cosh_dist(&one, &p).unwrap(), 1.0);
    assert!(HPoint::new(EvenFn::from_samples(vec![0.9; 64]).unwrap()).is_err());
}

#[test]
fn acosh1p_is_accurate_near_zero() {
    for x in [1e-300_f64, 1e-20, 1e-10, 1e-5] {
        let exact = (2.0 * x).sqrt() * (1.0 - x / 12.0 + 3.0 * x * x / 160.0);
        assert!(rel(acosh1p(x), exact) < 1e-15, "x = {x}");
    }
    assert_eq!(acosh1p(0.0), 0.0);
}

#[test]
fn geodesic_examples() {
    let (p, q) = (ellipse_point(5, 0, 1024), ellipse_point(5, 1, 1024));
    assert_eq!(geodesic_point(&p, &q, 0.0).unwrap(), p);
    assert_eq!(geodesic_point(&p, &q, 1.0).unwrap(), q);
    let mid = geodesic_point(&p, &q, 0.5).unwrap();
    let sum = EvenFn::combine(1.0, p.as_fn(), 1.0, q.as_fn()).unwrap();
    assert!(sup_diff(mid.as_fn(), normalize(&sum).unwrap().as_fn()) < 1e-14);
    let (a, b) = (hyper_dist(&p, &mid).unwrap(), hyper_dist(&q, &mid).unwrap());
    assert!((a - b).abs() < 1e-10);
    assert!((a + b - hyper_dist(&p, &q).unwrap()).abs() < 1e-9);
    assert_eq!(geodesic_point(&p, &p, 0.3).unwrap(), p);
    assert!(geodesic_point(&p, &q, 1.5).is_err());
}

#[test]
fn rhombus_examples() {
    let m = 1024;
    let (nu, omega) = (BoundaryDir::new(0.0), BoundaryDir::new(FRAC_PI_2));
    let r = project_disc_to_segment_geodesic(nu, omega, m).unwrap();
    // The square with vertices on the axes, scaled to area π.
    let a = PI.sqrt() / 2.0;
    let expect = EvenFn::from_fn(m, |t| a * (t.cos().abs() + t.sin().abs())).unwrap();
    assert!(sup_diff(r.as_fn(), &expect) < 1e-14);
    for x in [-0.5, -0.1, 0.05, 0.7] {
        assert!(pi0(segment_geodesic_point(nu, omega, x, m).unwrap().as_fn()) > r.pi0());
    }
    assert!(matches!(project_disc_to_segment_geodesic(nu, BoundaryDir::new(PI), m), Err(Error::Degenerate(_))));
}

#[test]
fn rhombus_is_the_pi0_minimizer() {
    let m = 512;
    let mut rng = case_rng(9, Suite::Dimension, 0);
    for _ in 0..20 {
        use rand::Rng;
        let nu = BoundaryDir::new(rng.random_range(0.0..PI));
        let omega = nu.rotated(rng.random_range(0.2..PI - 0.2));
        let raw = golden_section(|x| pi0(segment_geodesic_point(nu, omega, x, m).unwrap().as_fn()), -2.0, 2.0, 1e-10);
        assert!(raw.abs() < 1e-6);
        let x = golden_section(|x| segment_geodesic_pi0_excess(nu, omega, x).unwrap(), -2.0, 2.0, 1e-13);
        assert!(x.abs() < 1e-6);
        let at_min = segment_geodesic_point(nu, omega, x, m).unwrap();
        let r = project_disc_to_segment_geodesic(nu, omega, m).unwrap();
        assert!(sup_diff(at_min.as_fn(), r.as_fn()) < 1e-9);
        let (v, w) = (nu.unit(), omega.unit());
        let a = (PI / (4.0 * (v.x * w.y - v.y * w.x).abs())).sqrt();
        let rhombus = EvenFn::from_fn(m, |t| a * (t.cos() * v.x + t.sin() * v.y).abs() + a * (t.cos() * w.x + t.sin() * w.y).abs()).unwrap();
        assert!(sup_diff(r.as_fn(), &rhombus) < 1e-13);
    }
}

#[test]
fn segment_geodesic_is_arclength() {
    let (nu, omega) = (BoundaryDir::new(0.3), BoundaryDir::new(1.9));
    let p0 = segment_geodesic_point(nu, omega, 0.0, 256).unwrap();
    for x in [0.1, 0.5, 2.0] {
        let px = segment_geodesic_point(nu, omega, x, 256).unwrap();
        assert!((hyper_dist(&p0, &px).unwrap() - x).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reversed_cauchy_schwarz(seed in any::<u64>()) {
        let mut rng = case_rng(seed, Suite::Minkowski, 3);
        let p = normalize(&random::random_body(&mut rng, 512).unwrap()).unwrap();
        let q = normalize(&random::random_body(&mut rng, 512).unwrap()).unwrap();
        prop_assert!(form_a_best(p.as_fn(), q.as_fn()).unwrap() >= 1.0 - 1e-10);
        prop_assert!((form_a_best(p.as_fn(), p.as_fn()).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn triangle_inequality(seed in any::<u64>()) {
        let p = ellipse_point(seed, 0, 256);
        let q = ellipse_point(seed, 1, 256);
        let r = ellipse_point(seed, 2, 256);
        let (pq, qr, pr) = (hyper_dist(&p, &q).unwrap(), hyper_dist(&q, &r).unwrap(), hyper_dist(&p, &r).unwrap());
        prop_assert!(pq + qr - pr >= -1e-10);
    }

    #[test]
    fn geodesic_additivity(seed in any::<u64>(), t in 0.0..1.0_f64) {
        let mut rng = case_rng(seed, Suite::Extended, 9);
        let p = normalize(&random::random_body(&mut rng, 512).unwrap()).unwrap();
        let q = normalize(&random::random_body(&mut rng, 512).unwrap()).unwrap();
        let r = geodesic_point(&p, &q, t).unwrap();
        let gap = hyper_dist(&p, &r).unwrap() + hyper_dist(&r, &q).unwrap() - hyper_dist(&p, &q).unwrap();
        prop_assert!(gap.abs() < 1e-9);
    }

    #[test]
    fn minkowski_inequality(seed in any::<u64>()) {
        let mut rng = case_rng(seed, Suite::Minkowski, 4);
        let (h1, h2) = (random::random_body(&mut rng, 512).unwrap(), random::random_body(&mut rng, 512).unwrap());
        let (a12, a11, a22) = (form_a_best(&h1, &h2).unwrap(), form_a_best(&h1, &h1).unwrap(), form_a_best(&h2, &h2).unwrap());
        prop_assert!((a12 * a12 - a11 * a22) / (a12 * a12) >= -1e-12);
    }

    #[test]
    fn sobolev_bracketing(seed in any::<u64>()) {
        let mut rng = case_rng(seed, Suite::Encadrement, 0);
        let h = random::random_band_limited(&mut rng, 512, 24, 0.0).unwrap();
        let (l2, dl2) = h1_seminorms(&h);
        let minus_a = -form_a(&h, &h).unwrap();
        let norm = l2 + dl2;
        prop_assert!(l2 <= 0.25 * dl2 * (1.0 + 1e-12));
        prop_assert!(minus_a >= 3.0 / (16.0 * PI) * norm * (1.0 - 1e-12));
        prop_assert!(minus_a <= norm / (2.0 * PI) * (1.0 + 1e-12));
    }

    #[test]
    fn ellipse_form_matches_spectral(seed in any::<u64>()) {
        let mut rng = case_rng(seed, Suite::GramRank, 0);
        let (e1, e2) = (random::random_ellipse(&mut rng), random::random_ellipse(&mut rng));
        let (h1, h2) = (EvenFn::from_ellipse(&e1, 2048).unwrap(), EvenFn::from_ellipse(&e2, 2048).unwrap());
        prop_assert!(rel(form_a_best(&h1, &h2).unwrap(), form_a(&h1, &h2).unwrap()) < 1e-12);
    }
}

#[test]
fn ellipse_constructor_round_trip() {
    let e = Ellipse::new(Mat2::new(1.5, 0.3, -0.2, 0.626_666_666_666_666_7)).unwrap();
    let p = normalize(&EvenFn::from_ellipse(&e, 256).unwrap()).unwrap();
    assert!((form_a(p.as_fn(), p.as_fn()).unwrap() - 1.0).abs() < 1e-12);
}

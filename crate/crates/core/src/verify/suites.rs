//! Suite bodies.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use super::checks::{
    curvature_scale_estimate, ellipse_sum_energy, kernels_compare, minkowski_extended_test, minkowski_pair,
    quasi_iso_point,
};
use super::random::{
    random_band_limited, random_body, random_ellipse, random_ellipse_in, random_halfplane, random_mobius,
};
use super::{case_rng, CaseRecord, Suite, SuiteConfig, SuiteReport};
use crate::error::Result;
use crate::geom::Mat2;
use crate::limits::{empirical_dim_estimate, hausdorff_dim_estimate_with, MetricProfile};
use crate::lorentz::{form_a, form_a_best, h1_seminorms, normalize, HPoint};
use crate::mobius::{
    dist_h2, halfplane_apply, iota, iota_cosh_quadrature, rho_act_with, HalfPlanePoint, Mobius,
};
use crate::par::map_range;
use crate::supportfn::{EvenFn, Ellipse};

pub(super) fn run(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport> {
    match suite {
        Suite::Minkowski => minkowski(cfg),
        Suite::Extended => extended(cfg),
        Suite::Wirtinger => wirtinger(cfg),
        Suite::Encadrement => encadrement(cfg),
        Suite::Curvature => curvature(cfg),
        Suite::QuasiIso => quasi_iso_suite(40.0, 400, cfg),
        Suite::Kernels => kernels(cfg),
        Suite::Dimension => dimension(cfg),
        Suite::EllipseSum => ellipse_sum(cfg),
        Suite::GramRank => gram_rank(cfg),
        Suite::Equivariance => equivariance(cfg),
    }
}

fn collect(results: Vec<Result<CaseRecord>>) -> Result<Vec<CaseRecord>> {
    results.into_iter().collect()
}

fn describe(h: &EvenFn) -> String {
    match h.shape() {
        Some(s) => format!("{s:?}"),
        None => format!("samples:{:?}", &h.samples()[..h.grid().min(64)]),
    }
}

const MINKOWSKI_PAIRS: usize = 1000;
const HOMOTHETIC_PAIRS: usize = 100;

fn minkowski(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let suite = Suite::Minkowski;
    let records = collect(map_range(MINKOWSKI_PAIRS + HOMOTHETIC_PAIRS, cfg.exec, |i| {
        let mut rng = case_rng(cfg.seed, suite, i);
        let h1 = random_body(&mut rng, cfg.grid)?;
        let (label, h2, tol) = if i < MINKOWSKI_PAIRS {
            ("pair", random_body(&mut rng, cfg.grid)?, 1e-12)
        } else {
            let lambda = rng.random_range(0.2..5.0);
            ("homothetic", h1.scaled(lambda), 1e-9)
        };
        let (res, scale) = minkowski_pair(&h1, &h2)?;
        let scaled = res / scale;
        let violation = if label == "pair" { (-scaled).max(0.0) } else { scaled.abs() };
        Ok(CaseRecord::new(i, label, &format!("{}|{}", describe(&h1), describe(&h2)))
            .value("residual", res)
            .value("scaled_residual", scaled)
            .check(violation, tol))
    }))?;
    Ok(SuiteReport::from_records(suite, cfg, 1e-12, records))
}

const EXTENDED_CASES: usize = 500;

fn extended(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let suite = Suite::Extended;
    let records = collect(map_range(EXTENDED_CASES, cfg.exec, |i| {
        let (bodies, coeffs) = if i == 0 {
            let one = EvenFn::one(cfg.grid)?;
            (vec![one.clone(), one], vec![1.0])
        } else {
            let mut rng = case_rng(cfg.seed, suite, i);
            let n = rng.random_range(1..=5);
            let bodies = (0..=n).map(|_| random_body(&mut rng, cfg.grid)).collect::<Result<Vec<_>>>()?;
            let coeffs: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..=2.0)).collect();
            (bodies, coeffs)
        };
        let r = minkowski_extended_test(&bodies, &coeffs)?;
        let inputs: Vec<String> = bodies.iter().map(describe).collect();
        Ok(CaseRecord::new(i, if i == 0 { "disc" } else { "signed" }, &format!("{inputs:?}{coeffs:?}"))
            .value("n", coeffs.len() as f64)
            .value("residual", r.residual)
            .value("scaled_residual", r.scaled())
            .check((-r.scaled()).max(0.0), 1e-9))
    }))?;
    Ok(SuiteReport::from_records(suite, cfg, 1e-9, records))
}

const SOBOLEV_CASES: usize = 1000;

fn mean_zero_sample(cfg: &SuiteConfig, suite: Suite, i: usize) -> Result<EvenFn> {
    let mut rng = case_rng(cfg.seed, suite, i);
    let degree = 2 * rng.random_range(1..=32);
    random_band_limited(&mut rng, cfg.grid, degree, 0.0)
}

fn wirtinger(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let suite = Suite::Wirtinger;
    let records = collect(map_range(SOBOLEV_CASES, cfg.exec, |i| {
        let h = mean_zero_sample(cfg, suite, i)?;
        let (l2, dl2) = h1_seminorms(&h);
        let slack = (0.25 * dl2 - l2) / dl2;
        Ok(CaseRecord::new(i, "mean-zero", &describe(&h))
            .value("l2sq", l2)
            .value("dl2sq", dl2)
            .value("scaled_slack", slack)
            .check((-slack).max(0.0), 1e-12))
    }))?;
    Ok(SuiteReport::from_records(suite, cfg, 1e-12, records))
}

fn encadrement(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let suite = Suite::Encadrement;
    let records = collect(map_range(SOBOLEV_CASES, cfg.exec, |i| {
        let h = mean_zero_sample(cfg, suite, i)?;
        let (l2, dl2) = h1_seminorms(&h);
        let norm = l2 + dl2;
        let minus_a = -form_a(&h, &h)?;
        let lower = 3.0 / (16.0 * PI) * norm;
        let upper = norm / (2.0 * PI);
        let scale = upper;
        let violation = ((lower - minus_a) / scale).max((minus_a - upper) / scale).max(0.0);
        Ok(CaseRecord::new(i, "mean-zero", &describe(&h))
            .value("h1_norm_sq", norm)
            .value("minus_a", minus_a)
            .value("lower", lower)
            .value("upper", upper)
            .check(violation, 1e-12))
    }))?;
    Ok(SuiteReport::from_records(suite, cfg, 1e-12, records))
}

/// Values of `s` whose ratios `d(s)/s` are reported; the two smallest feed
/// the extrapolation.
pub const CURVATURE_S: [f64; 4] = [0.08, 0.04, 0.02, 0.01];

fn curvature(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let suite = Suite::Curvature;
    let target = (3.0_f64 / 8.0).sqrt();
    let est = curvature_scale_estimate(&CURVATURE_S)?;
    let mut records: Vec<CaseRecord> = est
        .ratios
        .iter()
        .enumerate()
        .map(|(i, &(s, r))| {
            let rec = CaseRecord::new(i, "ratio", &format!("s={s:?}")).value("s", s).value("ratio", r);
            if s == 0.01 {
                rec.check((r - target).abs(), 1e-4)
            } else {
                // Informational: the O(s²) error at larger s.
                rec.check((r - target).abs(), 1.0)
            }
        })
        .collect();
    let n = records.len();
    records.push(
        CaseRecord::new(n, "richardson", &format!("{CURVATURE_S:?}"))
            .value("extrapolated", est.richardson)
            .check((est.richardson - target).abs(), 1e-8),
    );
    let s: f64 = 1e-3;
    let quad = iota_cosh_quadrature(&Mobius::translation(s))?;
    let model = 1.0 + 3.0 * s * s / 16.0;
    records.push(
        CaseRecord::new(n + 1, "quadrature-expansion", "s=0.001")
            .value("cosh_quadrature", quad)
            .value("expansion", model)
            .check((quad - model).abs(), 1e-13),
    );
    Ok(SuiteReport::from_records(suite, cfg, 1e-8, records))
}

/// Sandwich and bounded-deviation checks on `points` equally spaced values
/// of `s ∈ [0, s_max]`, plus the deviation at `s_max`.
pub fn quasi_iso_suite(s_max: f64, points: usize, cfg: &SuiteConfig) -> Result<SuiteReport> {
    if !(s_max > 0.0 && s_max <= 40.0) || points < 2 {
        return Err(crate::error::Error::Domain(format!(
            "need 0 < s_max ≤ 40 and at least two points, got {s_max}, {points}"
        )));
    }
    let suite = Suite::QuasiIso;
    let grid: Vec<f64> = (0..points).map(|k| s_max * k as f64 / (points - 1) as f64).collect();
    let pts = grid.iter().map(|&s| quasi_iso_point(s)).collect::<Result<Vec<_>>>()?;
    let mut records: Vec<CaseRecord> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let dev = (p.d - 0.5 * p.s).abs();
            let mut v = (-p.sandwich_slack).max(dev - 0.5).max(0.0);
            if i > 0 {
                v = v.max(pts[i - 1].d - p.d);
            }
            let mut rec = CaseRecord::new(i, "grid", &format!("s={:?}", p.s))
                .value("s", p.s)
                .value("d", p.d)
                .value("deviation", dev)
                .value("upper", p.upper)
                .value("sandwich_slack", p.sandwich_slack);
            if let Some(lo) = p.lower {
                rec = rec.value("lower", lo);
            }
            rec.check(v, 1e-12)
        })
        .collect();
    let last = pts[pts.len() - 1];
    let n = records.len();
    // The deviation tends to ln(4/π) ≈ 0.2416, well inside ln(π/2).
    records.push(
        CaseRecord::new(n, "endpoint-deviation", &format!("s={:?}", last.s))
            .value("deviation", (last.d - 0.5 * last.s).abs())
            .check((last.d - 0.5 * last.s).abs(), 0.46),
    );
    Ok(SuiteReport::from_records(suite, cfg, 1e-12, records))
}

/// `t = 0.1, 0.2, …, 5`.
pub fn kernel_grid() -> Vec<f64> {
    (1..=50).map(|k| k as f64 / 10.0).collect()
}

fn kernels(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let suite = Suite::Kernels;
    let ts = kernel_grid();
    let records = collect(map_range(ts.len(), cfg.exec, |i| {
        let t = ts[i];
        let k = kernels_compare(t)?;
        let et = t.exp();
        let quad_err = (k.i1 - k.closed).abs().max((k.i2 - k.closed).abs()).max((k.i1 - k.i2).abs());
        let kern2_err = (k.kern2 - et).abs() / et;
        let gap_floor = 0.01 * (et - k.closed);
        let gap_short = (gap_floor - k.gap()).max(0.0).max(-k.gap());
        // Scale the secondary checks into the quadrature tolerance.
        let v = quad_err.max(kern2_err * 1e-10 / 1e-12).max(if gap_short > 0.0 { f64::INFINITY } else { 0.0 });
        Ok(CaseRecord::new(i, "kernel", &format!("t={t:?}"))
            .value("t", t)
            .value("i1", k.i1)
            .value("i2", k.i2)
            .value("closed", k.closed)
            .value("kern2", k.kern2)
            .value("gap", k.gap())
            .value("d_closed", crate::lorentz::acosh1p(k.closed - 1.0))
            .value("d_kern2", crate::lorentz::acosh1p(k.kern2 - 1.0))
            .check(v, 1e-10))
    }))?;
    Ok(SuiteReport::from_records(suite, cfg, 1e-10, records))
}

/// Directions sampled by the empirical covering.
pub const EMPIRICAL_SAMPLES: usize = 100_000;

fn dimension(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let suite = Suite::Dimension;
    let visual = hausdorff_dim_estimate_with(MetricProfile::Visual, 4, 12)?;
    let round = hausdorff_dim_estimate_with(MetricProfile::RoundAngle, 4, 12)?;
    let root = hausdorff_dim_estimate_with(MetricProfile::PowerLaw { lambda: 1.0, t: 0.5 }, 4, 12)?;
    let scaled = hausdorff_dim_estimate_with(MetricProfile::PowerLaw { lambda: 5.0, t: 0.5 }, 4, 12)?;
    let seed: u64 = case_rng(cfg.seed, suite, 0).random();
    let empirical = empirical_dim_estimate(MetricProfile::Visual, 2, 12, EMPIRICAL_SAMPLES, seed)?;
    let records = vec![
        CaseRecord::new(0, "analytic-visual", "j=4..12")
            .value("slope", visual.slope)
            .value("residual", visual.residual)
            .check((visual.slope - 2.0).abs(), 0.02),
        CaseRecord::new(1, "empirical-visual", &format!("samples={EMPIRICAL_SAMPLES} seed={seed}"))
            .value("slope", empirical.slope)
            .value("residual", empirical.residual)
            .value("scales", empirical.points.len() as f64)
            .check((empirical.slope - visual.slope).abs(), 0.1),
        CaseRecord::new(2, "control-round", "j=4..12")
            .value("slope", round.slope)
            .value("residual", round.residual)
            .check((round.slope - 1.0).abs(), 0.01),
        CaseRecord::new(3, "scale-invariance", "lambda=1,5 t=0.5")
            .value("slope_lambda_1", root.slope)
            .value("slope_lambda_5", scaled.slope)
            .check((root.slope - scaled.slope).abs(), 0.01),
    ];
    Ok(SuiteReport::from_records(suite, cfg, 0.02, records))
}

const ELLIPSE_SUM_EACH: usize = 25;
/// Least hyperbolic distance between the two points of a non-homothetic pair.
/// The energy vanishes to fourth order as the points merge.
pub const ELLIPSE_SUM_SEPARATION: f64 = 1.0;

fn ellipse_sum(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let suite = Suite::EllipseSum;
    let m = cfg.grid;
    let total = 1 + 4 * ELLIPSE_SUM_EACH;
    let records = collect(map_range(total, cfg.exec, |i| {
        let mut rng = case_rng(cfg.seed, suite, i);
        if i == 0 {
            let e = Ellipse::new(Mat2::new(2.0, 0.0, 0.0, 0.5))?;
            let energy = ellipse_sum_energy(&EvenFn::from_ellipse(&e, m)?, &EvenFn::one(m)?)?;
            return Ok(CaseRecord::new(0, "diag-plus-disc", "diag(2,1/2)+I")
                .value("energy", energy)
                .check(1e-6 / energy, 1.0));
        }
        let kind = (i - 1) / ELLIPSE_SUM_EACH;
        let homothetic = kind.is_multiple_of(2);
        let acted = kind >= 2;
        let e1 = random_ellipse(&mut rng);
        let h1 = EvenFn::from_ellipse(&e1, m)?;
        let h2 = if homothetic {
            h1.scaled(rng.random_range(0.2..5.0))
        } else {
            // Keep the pair well apart in the hyperbolic plane.
            loop {
                let e2 = random_ellipse_in(&mut rng, 1.0, 20.0);
                let z1 = halfplane_apply(&Mobius::from_matrix(e1.matrix())?, &HalfPlanePoint::i());
                let z2 = halfplane_apply(&Mobius::from_matrix(e2.matrix())?, &HalfPlanePoint::i());
                if dist_h2(&z1, &z2) >= ELLIPSE_SUM_SEPARATION {
                    break EvenFn::from_ellipse(&e2, m)?;
                }
            }
        };
        let (h1, h2, tag) = if acted {
            let g = random_mobius(&mut rng, 2.0);
            (rho_act_with(&g, &h1, cfg.exec)?, rho_act_with(&g, &h2, cfg.exec)?, format!("{g:?}"))
        } else {
            (h1, h2, String::new())
        };
        let energy = ellipse_sum_energy(&h1, &h2)?;
        let label = match (homothetic, acted) {
            (true, false) => "homothetic",
            (false, false) => "separated",
            (true, true) => "homothetic-acted",
            (false, true) => "separated-acted",
        };
        let rec = CaseRecord::new(i, label, &format!("{}|{}|{tag}", describe(&h1), describe(&h2))).value("energy", energy);
        Ok(if homothetic {
            rec.check(energy, 1e-12)
        } else {
            rec.check(1e-6 / energy, 1.0)
        })
    }))?;
    Ok(SuiteReport::from_records(suite, cfg, 1e-12, records))
}

const GRAM_DRAWS: usize = 50;
/// Least pairwise hyperbolic distance of the points in one Gram draw. The
/// determinant tends to zero as points merge.
pub const GRAM_SEPARATION: f64 = 1.5;

/// Determinant of the `𝐀`-Gram matrix after scaling each row to unit
/// Euclidean norm.
pub fn normalized_gram_det(bodies: &[EvenFn]) -> Result<f64> {
    let n = bodies.len();
    let mut g = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = form_a_best(&bodies[i], &bodies[j])?;
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
    }
    for i in 0..n {
        let norm = g.row(i).norm();
        if norm > 0.0 {
            g.row_mut(i).scale_mut(1.0 / norm);
        }
    }
    Ok(g.determinant())
}

fn gram_rank(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let suite = Suite::GramRank;
    let records = collect(map_range(5 * GRAM_DRAWS, cfg.exec, |i| {
        let n = 2 + i / GRAM_DRAWS;
        let mut rng = case_rng(cfg.seed, suite, i);
        let mut points: Vec<HalfPlanePoint> = Vec::with_capacity(n + 1);
        while points.len() < n + 1 {
            let z = random_halfplane(&mut rng);
            if points.iter().all(|w| dist_h2(w, &z) >= GRAM_SEPARATION) {
                points.push(z);
            }
        }
        let bodies = points.iter().map(|z| iota(z, cfg.grid).map(HPoint::into_fn)).collect::<Result<Vec<_>>>()?;
        let det = normalized_gram_det(&bodies)?;
        let inputs: Vec<String> = bodies.iter().map(describe).collect();
        Ok(CaseRecord::new(i, "gram", &format!("{inputs:?}"))
            .value("n", n as f64)
            .value("abs_det", det.abs())
            .check(1e-10 / det.abs(), 1.0))
    }))?;
    Ok(SuiteReport::from_records(suite, cfg, 1.0, records))
}

const EQUIVARIANCE_CASES: usize = 200;
const MOVING_CASES: usize = 100;

fn random_function(rng: &mut impl Rng, grid: usize) -> Result<EvenFn> {
    let a0 = 2.0 + rng.sample::<f64, _>(StandardNormal).abs();
    random_band_limited(rng, grid, 16, a0)
}

fn sup_diff(a: &EvenFn, b: &EvenFn) -> f64 {
    a.samples().iter().zip(b.samples()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn equivariance(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let suite = Suite::Equivariance;
    let m = cfg.grid;
    let total = 3 * EQUIVARIANCE_CASES + 1 + MOVING_CASES;
    // Rotations within a case run sequentially; the cases are the parallel unit.
    let inner = crate::par::Execution::Sequential;
    let records = collect(map_range(total, cfg.exec, |i| {
        let mut rng = case_rng(cfg.seed, suite, i);
        match i / EQUIVARIANCE_CASES {
            0 => {
                let g = random_mobius(&mut rng, 3.0);
                let (h1, h2) = (random_function(&mut rng, m)?, random_function(&mut rng, m)?);
                let before = form_a(&h1, &h2)?;
                let after = form_a(&rho_act_with(&g, &h1, inner)?, &rho_act_with(&g, &h2, inner)?)?;
                Ok(CaseRecord::new(i, "form-invariance", &format!("{g:?}|{}|{}", describe(&h1), describe(&h2)))
                    .value("before", before)
                    .value("after", after)
                    .check((after - before).abs(), 1e-8))
            }
            1 => {
                let g = random_mobius(&mut rng, 3.0);
                let z = random_halfplane(&mut rng);
                let lhs = rho_act_with(&g, iota(&z, m)?.as_fn(), inner)?;
                let rhs = iota(&halfplane_apply(&g, &z), m)?;
                let err = sup_diff(&lhs, rhs.as_fn());
                Ok(CaseRecord::new(i, "iota-equivariance", &format!("{g:?}|{z:?}"))
                    .value("sup_error", err)
                    .check(err, 1e-10))
            }
            2 => {
                let (g1, g2) = (random_mobius(&mut rng, 3.0), random_mobius(&mut rng, 3.0));
                let h = random_function(&mut rng, m)?;
                let direct = rho_act_with(&(g1 * g2), &h, inner)?;
                let nested = rho_act_with(&g1, &rho_act_with(&g2, &h, inner)?, inner)?;
                let err = sup_diff(&direct, &nested);
                Ok(CaseRecord::new(i, "group-law", &format!("{g1:?}|{g2:?}|{}", describe(&h)))
                    .value("sup_error", err)
                    .check(err, 1e-9))
            }
            _ if i == 3 * EQUIVARIANCE_CASES => {
                let one = EvenFn::one(m)?.untagged();
                let moved = rho_act_with(&Mobius::rotation(2f64.sqrt()), &one, inner)?;
                let err = sup_diff(&moved, &one);
                Ok(CaseRecord::new(i, "disc-fixed", "rotation sqrt2")
                    .value("sup_error", err)
                    .check(err, 1e-14))
            }
            _ => {
                let e = random_ellipse_in(&mut rng, 1.5, 20.0);
                let p = normalize(&EvenFn::from_ellipse(&e, m)?)?;
                let moved = rho_act_with(&Mobius::rotation(2f64.sqrt()), p.as_fn(), inner)?;
                let disp = sup_diff(&moved, p.as_fn());
                Ok(CaseRecord::new(i, "point-moves", &describe(p.as_fn()))
                    .value("displacement", disp)
                    .check(1e-6 / disp, 1.0))
            }
        }
    }))?;
    Ok(SuiteReport::from_records(suite, cfg, 1e-8, records))
}

#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

use hypkonvex::EvenFn;

/// Adaptive Simpson quadrature, kept separate from the library integrators
/// so the oracles do not share code with what they check.
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn step<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 48)
}

pub fn k_oracle(k: f64) -> f64 {
    simpson(&|u: f64| 1.0 / (1.0 - k * k * u.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2, 1e-15)
}

pub fn e_oracle(k: f64) -> f64 {
    simpson(&|u: f64| (1.0 - k * k * u.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2, 1e-15)
}

pub fn i_oracle(k: f64) -> f64 {
    simpson(&|u: f64| (1.0 - k * k * u.sin().powi(2)).powf(-1.5), 0.0, FRAC_PI_2, 1e-14)
}

/// Minimizer of a unimodal function on `[a, b]`.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

pub fn sup_diff(a: &EvenFn, b: &EvenFn) -> f64 {
    a.samples().iter().zip(b.samples()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Relative error.
pub fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs()
}

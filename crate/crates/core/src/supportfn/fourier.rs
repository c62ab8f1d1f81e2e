//! Real trigonometric coefficients of uniformly sampled periodic functions.
//!
//! For samples `h_j = h(2πj/M)` the table holds `a_n, b_n` for
//! `0 ≤ n ≤ N = M/2` such that
//!
//! ```text
//! h(θ) = a₀ + Σ_{1≤n<N} (a_n cos nθ + b_n sin nθ) + a_N cos Nθ
//! ```
//!
//! interpolates the samples. `b₀ = b_N = 0`.

use std::cell::RefCell;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn forward_plan(m: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(m))
}

fn inverse_plan(m: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(m))
}

/// Trigonometric coefficient table.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Cosine coefficients `a_0 … a_N`.
    pub a: Vec<f64>,
    /// Sine coefficients `b_0 … b_N`.
    pub b: Vec<f64>,
}

impl Spectrum {
    pub fn from_samples(samples: &[f64]) -> Spectrum {
        let m = samples.len();
        let half = m / 2;
        let mut buf: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        forward_plan(m).process(&mut buf);
        let inv_m = 1.0 / m as f64;
        let mut a = vec![0.0; half + 1];
        let mut b = vec![0.0; half + 1];
        a[0] = buf[0].re * inv_m;
        for n in 1..half {
            a[n] = 2.0 * buf[n].re * inv_m;
            b[n] = -2.0 * buf[n].im * inv_m;
        }
        if half > 0 {
            a[half] = buf[half].re * inv_m;
        }
        Spectrum { a, b }
    }

    /// Highest harmonic `N = M/2`.
    pub fn nyquist(&self) -> usize {
        self.a.len() - 1
    }

    pub fn grid(&self) -> usize {
        2 * self.nyquist()
    }

    /// Samples on the `M`-point grid of the series whose coefficients are
    /// `weight(n) · (a_n, b_n)`.
    pub fn synthesize_weighted<W: Fn(usize) -> f64>(&self, weight: W) -> Vec<f64> {
        let half = self.nyquist();
        let m = 2 * half;
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        buf[0] = Complex64::new(self.a[0] * weight(0) * m as f64, 0.0);
        for n in 1..half {
            let w = weight(n) * 0.5 * m as f64;
            let c = Complex64::new(self.a[n] * w, -self.b[n] * w);
            buf[n] = c;
            buf[m - n] = c.conj();
        }
        if half > 0 {
            buf[half] = Complex64::new(self.a[half] * weight(half) * m as f64, 0.0);
        }
        inverse_plan(m).process(&mut buf);
        let inv_m = 1.0 / m as f64;
        buf.iter().map(|c| c.re * inv_m).collect()
    }

    pub fn to_samples(&self) -> Vec<f64> {
        self.synthesize_weighted(|_| 1.0)
    }

    /// Value of the interpolating series at an arbitrary angle.
    pub fn eval(&self, theta: f64) -> f64 {
        self.eval_with(theta, false)
    }

    /// Derivative of the interpolating series. The Nyquist term is dropped,
    /// as usual for spectral differentiation.
    pub fn eval_deriv(&self, theta: f64) -> f64 {
        self.eval_with(theta, true)
    }

    fn eval_with(&self, theta: f64, deriv: bool) -> f64 {
        let half = self.nyquist();
        let mut acc = if deriv { 0.0 } else { self.a[0] };
        let (s1, c1) = theta.sin_cos();
        let (mut s, mut c) = (s1, c1);
        for n in 1..=half {
            if n % 32 == 0 {
                // Re-anchor the rotation recurrence.
                let (sn, cn) = (n as f64 * theta).sin_cos();
                s = sn;
                c = cn;
            }
            let (an, bn) = (self.a[n], self.b[n]);
            if an != 0.0 || bn != 0.0 {
                if deriv {
                    if n < half {
                        acc += n as f64 * (bn * c - an * s);
                    }
                } else if n < half {
                    acc += an * c + bn * s;
                } else {
                    acc += an * c;
                }
            }
            let cn = c * c1 - s * s1;
            s = s * c1 + c * s1;
            c = cn;
        }
        acc
    }

    /// Mean-square energy `½ Σ_{n ≥ from} (a_n² + b_n²)`; the constant term
    /// counts fully when `from = 0`.
    pub fn energy_from(&self, from: usize) -> f64 {
        let half = self.nyquist();
        let mut e = 0.0;
        for n in from..=half {
            let w = if n == 0 || n == half { 1.0 } else { 0.5 };
            e += w * (self.a[n] * self.a[n] + self.b[n] * self.b[n]);
        }
        e
    }

    /// Largest odd-harmonic coefficient magnitude; zero for even functions.
    pub fn max_odd_coefficient(&self) -> f64 {
        (1..=self.nyquist())
            .step_by(2)
            .map(|n| self.a[n].abs().max(self.b[n].abs()))
            .fold(0.0, f64::max)
    }
}

//! Complete elliptic integrals of the first and second kind.
//!
//! ```text
//! K(k) = ∫₀^{π/2} (1 − k² sin²u)^{−1/2} du
//! E(k) = ∫₀^{π/2} (1 − k² sin²u)^{1/2}  du
//! I(k) = ∫₀^{π/2} (1 − k² sin²u)^{−3/2} du = E(k) / (1 − k²)
//! ```
//!
//! All three use the modulus convention (not the parameter m = k²).
//! K and E come from the arithmetic–geometric mean: with a₀ = 1, b₀ = k',
//! c₀ = k,
//!
//! ```text
//! K = π / (2 a_∞),    E = K · (1 − Σₙ 2ⁿ⁻¹ cₙ²)
//! ```

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Largest modulus accepted by [`agm_ke`]; K diverges as k → 1.
pub const MAX_MODULUS: f64 = 1.0 - 1e-12;

const MAX_ITER: usize = 64;
const GAP_TOL: f64 = 1e-16;

/// K, E and I at one modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticTriple {
    pub k: f64,
    pub big_k: f64,
    pub big_e: f64,
    pub big_i: f64,
}

/// `(K(k), E(k))` for `0 ≤ k ≤ 1 − 1e-12`.
pub fn agm_ke(k: f64) -> Result<(f64, f64)> {
    if !(0.0..=MAX_MODULUS).contains(&k) {
        return Err(Error::Domain(format!("elliptic modulus {k} outside [0, 1 - 1e-12]")));
    }
    if k == 0.0 {
        return Ok((FRAC_PI_2, FRAC_PI_2));
    }
    let kp = ((1.0 - k) * (1.0 + k)).sqrt();
    agm_core(k, kp)
}

/// `(K, E)` evaluated from the complementary modulus `k' = √(1 − k²)`,
/// `0 < k' ≤ 1`.
///
/// Accurate even when k rounds to one in double precision, e.g. the
/// modulus `√(1 − e^{−2s})` for large s, where the complement `e^{−s}` is
/// known exactly.
pub fn agm_ke_complement(kp: f64) -> Result<(f64, f64)> {
    if !(kp > 0.0 && kp <= 1.0) {
        return Err(Error::Domain(format!("complementary modulus {kp} outside (0, 1]")));
    }
    if kp == 1.0 {
        return Ok((FRAC_PI_2, FRAC_PI_2));
    }
    let k = ((1.0 - kp) * (1.0 + kp)).sqrt();
    agm_core(k, kp)
}

fn agm_core(k: f64, kp: f64) -> Result<(f64, f64)> {
    let mut a = 1.0_f64;
    let mut b = kp;
    // Σ 2^{n-1} c_n², starting with c₀ = k.
    let mut weight = 0.5;
    let mut sum = weight * k * k;
    for _ in 0..MAX_ITER {
        let c = 0.5 * (a - b);
        let a_next = 0.5 * (a + b);
        let b_next = (a * b).sqrt();
        weight *= 2.0;
        sum += weight * c * c;
        a = a_next;
        b = b_next;
        // One ulp of disagreement between a and b is the floor.
        if c <= GAP_TOL * a || a - b <= f64::EPSILON * a {
            let big_k = FRAC_PI_2 / a;
            return Ok((big_k, big_k * (1.0 - sum)));
        }
    }
    Err(Error::NoConvergence(format!("AGM for k = {k} after {MAX_ITER} steps")))
}

/// `I(k) = E(k) / (1 − k²)`.
pub fn ellip_i(k: f64) -> Result<f64> {
    let (_, e) = agm_ke(k)?;
    Ok(e / ((1.0 - k) * (1.0 + k)))
}

pub fn elliptic_triple(k: f64) -> Result<EllipticTriple> {
    let (big_k, big_e) = agm_ke(k)?;
    Ok(EllipticTriple {
        k,
        big_k,
        big_e,
        big_i: big_e / ((1.0 - k) * (1.0 + k)),
    })
}

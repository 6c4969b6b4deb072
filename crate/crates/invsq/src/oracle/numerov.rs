//! Numerov shooting solver for a square well joined to an attractive
//! inverse-square tail.
//!
//! The potential is `-gamma_prime / r0^2` for `r < r0` and `-gamma / r^2`
//! outside. The solver integrates the reduced radial equation outward from
//! the origin on a uniform grid in `t = r / r0` and inward from the far
//! region on a uniform grid in `s = ln(r / r0)`, then matches logarithmic
//! derivatives at `r0`. The log grid is what makes extremely shallow
//! levels reachable: a level with `kappa * r0 ~ 1e-5` has its outer
//! turning region a million well radii out, which costs only a few extra
//! units of `s`.
//!
//! Everything here is plain finite-difference machinery; no closed-form
//! solution of either region is used anywhere.

use serde::{Deserialize, Serialize};

use super::root::brent;
use crate::error::{Error, Result};

/// A bound level found by shooting.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NumerovSolution {
    /// Level energy in units where `hbar = 2m = 1`; negative.
    pub energy: f64,
    /// Decay constant `sqrt(-energy)`.
    pub kappa: f64,
    /// Radial node count of the eigenfunction.
    pub node_count: usize,
    /// Mismatch of interior and exterior logarithmic derivatives at the
    /// accepted root; a few ulps of the derivative scale.
    pub matching_residual: f64,
}

const N_IN: usize = 2000;
const N_EXT: usize = 4000;
// Dimensionless radius kappa * r where the pure-exponential tail seeds the
// inward sweep.
const FAR: f64 = 18.0;
// Largest admissible kappa * r0; keeps the log grid at least one decade
// deep. Physical levels of interest sit far below this.
const X_MAX: f64 = 6.0;

/// Find the bound level with `kappa * r0` inside `[x_lo, x_hi]`.
///
/// `gamma` is the tail coupling (must stay below 1/4 so the tail alone
/// binds nothing), `gamma_prime` the well depth parameter, `r0` the well
/// radius. The bracket is in the dimensionless variable `x = kappa * r0`
/// and must contain exactly one sign change of the matching function.
pub fn numerov_bound_state(
    gamma: f64,
    gamma_prime: f64,
    r0: f64,
    x_lo: f64,
    x_hi: f64,
) -> Result<NumerovSolution> {
    if !(gamma < 0.25) {
        return Err(Error::Domain(format!(
            "numerov_bound_state: tail coupling {gamma} must be below 1/4"
        )));
    }
    if !(gamma_prime > 0.0 && gamma_prime.is_finite()) {
        return Err(Error::Domain(format!(
            "numerov_bound_state: well depth {gamma_prime} must be positive"
        )));
    }
    if !(r0 > 0.0 && r0.is_finite()) {
        return Err(Error::Domain(format!(
            "numerov_bound_state: well radius {r0} must be positive"
        )));
    }
    if !(0.0 < x_lo && x_lo < x_hi && x_hi <= X_MAX) {
        return Err(Error::Domain(format!(
            "numerov_bound_state: bracket ({x_lo}, {x_hi}) must satisfy \
             0 < x_lo < x_hi <= {X_MAX}"
        )));
    }

    let nu2 = 0.25 - gamma;
    let mismatch =
        |x: f64| interior_log_deriv(gamma_prime, x) - exterior_log_deriv(nu2, x);
    let found = brent(mismatch, x_lo, x_hi, 0.0)?;
    let x = found.root;

    let interior = interior_profile(gamma_prime, x);
    let exterior = exterior_profile(nu2, x);
    let node_count = sign_changes(&interior[1..]) + sign_changes(&exterior);

    let kappa = x / r0;
    Ok(NumerovSolution {
        energy: -kappa * kappa,
        kappa,
        node_count,
        matching_residual: found.residual,
    })
}

/// Interior reduced wavefunction on the uniform `t = r/r0` grid, with
/// `u(0) = 0` and an arbitrary overall scale.
fn interior_profile(gamma_prime: f64, x: f64) -> Vec<f64> {
    // In t units the equation is u'' = q u with constant q.
    let q = x * x - gamma_prime;
    let h = 1.0 / N_IN as f64;
    // Series seed u ~ t + q t^3/6 + q^2 t^5/120 keeps the start O(h^5) exact.
    let u1 = h * (1.0 + q * h * h / 6.0 * (1.0 + q * h * h / 20.0));
    let coeffs = vec![q; N_IN + 1];
    numerov_outward(&coeffs, h, 0.0, u1)
}

/// Exterior reduced function w(s) = u(r) e^{-s/2} on the uniform
/// `s = ln(r/r0)` grid from 0 to ln(FAR/x), integrated inward from a
/// pure-decay seed.
fn exterior_profile(nu2: f64, x: f64) -> Vec<f64> {
    let s_max = (FAR / x).ln();
    let h = s_max / N_EXT as f64;
    let coeffs: Vec<f64> = (0..=N_EXT)
        .map(|i| {
            let s = h * i as f64;
            let xr = x * s.exp();
            nu2 + xr * xr
        })
        .collect();
    let seed = |s: f64| (-0.5 * s).exp() * (-x * s.exp()).exp();
    let s_end = h * N_EXT as f64;
    let s_end1 = h * (N_EXT - 1) as f64;
    numerov_inward(&coeffs, h, seed(s_end), seed(s_end1))
}

/// Logarithmic derivative r u'(r)/u(r) at r0 from the interior side.
fn interior_log_deriv(gamma_prime: f64, x: f64) -> f64 {
    let u = interior_profile(gamma_prime, x);
    let h = 1.0 / N_IN as f64;
    deriv5_backward(&u, h) / u[N_IN]
}

/// Logarithmic derivative r u'(r)/u(r) at r0 from the exterior side; the
/// 1/2 undoes the e^{-s/2} weight of the log-grid variable.
fn exterior_log_deriv(nu2: f64, x: f64) -> f64 {
    let w = exterior_profile(nu2, x);
    let s_max = (FAR / x).ln();
    let h = s_max / N_EXT as f64;
    0.5 + deriv5_forward(&w, h) / w[0]
}

/// Numerov sweep for u'' = Q u with ascending index, given u[0] and u[1].
fn numerov_outward(coeffs: &[f64], h: f64, u0: f64, u1: f64) -> Vec<f64> {
    let n = coeffs.len();
    let c = h * h / 12.0;
    let mut u = vec![0.0; n];
    u[0] = u0;
    u[1] = u1;
    let mut phi_lo = u[0] * (1.0 - c * coeffs[0]);
    let mut phi_mid = u[1] * (1.0 - c * coeffs[1]);
    for i in 2..n {
        let phi_hi = 2.0 * phi_mid - phi_lo + h * h * coeffs[i - 1] * u[i - 1];
        u[i] = phi_hi / (1.0 - c * coeffs[i]);
        phi_lo = phi_mid;
        phi_mid = phi_hi;
    }
    u
}

/// Numerov sweep for u'' = Q u with descending index, given the last two
/// values.
fn numerov_inward(coeffs: &[f64], h: f64, u_end: f64, u_end1: f64) -> Vec<f64> {
    let n = coeffs.len();
    let c = h * h / 12.0;
    let mut u = vec![0.0; n];
    u[n - 1] = u_end;
    u[n - 2] = u_end1;
    let mut phi_hi = u[n - 1] * (1.0 - c * coeffs[n - 1]);
    let mut phi_mid = u[n - 2] * (1.0 - c * coeffs[n - 2]);
    for i in (0..n - 2).rev() {
        let phi_lo = 2.0 * phi_mid - phi_hi + h * h * coeffs[i + 1] * u[i + 1];
        u[i] = phi_lo / (1.0 - c * coeffs[i]);
        phi_hi = phi_mid;
        phi_mid = phi_lo;
    }
    u
}

/// One-sided five-point derivative at the first grid point.
fn deriv5_forward(u: &[f64], h: f64) -> f64 {
    (-25.0 * u[0] + 48.0 * u[1] - 36.0 * u[2] + 16.0 * u[3] - 3.0 * u[4]) / (12.0 * h)
}

/// One-sided five-point derivative at the last grid point.
fn deriv5_backward(u: &[f64], h: f64) -> f64 {
    let n = u.len();
    (25.0 * u[n - 1] - 48.0 * u[n - 2] + 36.0 * u[n - 3] - 16.0 * u[n - 4]
        + 3.0 * u[n - 5])
        / (12.0 * h)
}

fn sign_changes(u: &[f64]) -> usize {
    let mut count = 0;
    let mut prev = 0.0f64;
    for &v in u {
        if v == 0.0 {
            continue;
        }
        if prev != 0.0 && v.signum() != prev.signum() {
            count += 1;
        }
        prev = v;
    }
    count
}

//! Bessel functions J and Y for orders 0 <= nu < 1, with derivatives.
//!
//! Below `JY_SERIES_MAX_X` the ascending series is summed directly and Y
//! comes from the reflection J_{-nu} combination; above it both functions
//! use the large-argument modulus/phase expansion. Near nu = 0 the
//! reflection denominator sin(pi nu) cancels, so Y switches to the
//! logarithmic Y_0 series plus a first-order correction in the order.

use super::gamma::gamma_fn;
use crate::error::{Error, Result};

/// Method switch: ascending series at or below, asymptotic expansion above.
pub(crate) const JY_SERIES_MAX_X: f64 = 12.0;
/// Below this order Y uses the Y_0 logarithmic series; the reflection
/// formula loses digits to sin(pi nu) cancellation there.
pub(crate) const Y_LOG_SERIES_MAX_NU: f64 = 3e-6;

const MAX_TERMS: usize = 600;
const EULER: f64 = 0.577_215_664_901_532_9;

pub(crate) struct JyParts {
    pub j: f64,
    pub j_prime: f64,
    pub y: f64,
    pub y_prime: f64,
    pub err: f64,
}

/// (J_nu, J'_nu, error bound) for 0 <= nu < 1, x >= 0.
pub(crate) fn j_with_derivative(nu: f64, x: f64) -> Result<(f64, f64, f64)> {
    check_order(nu, "bessel_j")?;
    if !(x >= 0.0) {
        return Err(Error::Domain(format!(
            "bessel_j: argument must be nonnegative, got {x}"
        )));
    }
    if x == 0.0 {
        return if nu == 0.0 {
            Ok((1.0, 0.0, 0.0))
        } else {
            Ok((0.0, f64::INFINITY, 0.0))
        };
    }
    if x <= JY_SERIES_MAX_X {
        let (j, jp, err) = j_series(nu, x)?;
        Ok((j, jp, err))
    } else {
        let parts = jy_asymptotic(nu, x)?;
        Ok((parts.j, parts.j_prime, parts.err))
    }
}

/// (Y_nu, Y'_nu, error bound) for 0 <= nu < 1, x > 0.
pub(crate) fn y_with_derivative(nu: f64, x: f64) -> Result<(f64, f64, f64)> {
    check_order(nu, "bessel_y")?;
    if !(x > 0.0) {
        return Err(Error::Domain(format!(
            "bessel_y: argument must be positive, got {x}"
        )));
    }
    if x > JY_SERIES_MAX_X {
        let parts = jy_asymptotic(nu, x)?;
        return Ok((parts.y, parts.y_prime, parts.err));
    }
    if nu < Y_LOG_SERIES_MAX_NU {
        return y_log_series(nu, x);
    }
    // Reflection: Y = (J_nu cos pi nu - J_{-nu}) / sin pi nu.
    let (sin_pn, cos_pn) = (std::f64::consts::PI * nu).sin_cos();
    let (j, jp, ej) = j_series(nu, x)?;
    let (jm, jmp, em) = j_series(-nu, x)?;
    let y = (j * cos_pn - jm) / sin_pn;
    let yp = (jp * cos_pn - jmp) / sin_pn;
    let err = (ej + em) / sin_pn.abs();
    Ok((y, yp, err))
}

fn check_order(nu: f64, who: &str) -> Result<()> {
    if !(nu >= 0.0) {
        return Err(Error::Domain(format!(
            "{who}: order must be nonnegative, got {nu}"
        )));
    }
    if nu >= 1.0 {
        return Err(Error::OutOfRange(format!(
            "{who}: order {nu} outside the implemented range [0, 1)"
        )));
    }
    Ok(())
}

/// Ascending series for J_alpha with -1 < alpha < 1, x > 0; returns
/// (value, derivative, error bound). Used for both signs of the order by
/// the reflection formula.
fn j_series(alpha: f64, x: f64) -> Result<(f64, f64, f64)> {
    let q = 0.25 * x * x;
    let mut term = (0.5 * x).powf(alpha) / gamma_fn(1.0 + alpha)?;
    let mut sum = term;
    let mut deriv_sum = term * alpha;
    let mut max_term = term.abs();
    let mut n = 0usize;
    loop {
        n += 1;
        term *= -q / (n as f64 * (n as f64 + alpha));
        sum += term;
        deriv_sum += term * (alpha + 2.0 * n as f64);
        max_term = max_term.max(term.abs());
        if term.abs() <= f64::EPSILON * sum.abs().max(1e-300) && n > 2 {
            break;
        }
        if n >= MAX_TERMS {
            return Err(Error::NonConvergence(format!(
                "bessel_j: series for order {alpha}, x = {x} did not settle"
            )));
        }
    }
    // Alternating series: roundoff scales with the largest term.
    let err = term.abs() + 4.0 * f64::EPSILON * max_term;
    Ok((sum, deriv_sum / x, err))
}

/// Y near order zero from the logarithmic series,
/// Y_0 = (2/pi)[(ln(x/2) + Euler) J_0 + sum (-1)^{k+1} H_k q^k/(k!)^2],
/// q = x^2/4, then Y_nu = Y_0 - nu (pi/2) J_0 + O(nu^2); the slope in the
/// order follows from expanding the reflection formula around nu = 0. The
/// x derivative differentiates the series term by term, avoiding any
/// division by J_0 (which vanishes repeatedly inside this x range).
fn y_log_series(nu: f64, x: f64) -> Result<(f64, f64, f64)> {
    let q = 0.25 * x * x;
    let (j0, j0p, _) = j_series(0.0, x)?;
    let j1 = -j0p;
    let mut c = 1.0;
    let mut harmonic = 0.0;
    let mut sum = 0.0;
    let mut deriv_sum = 0.0;
    let mut n = 0usize;
    loop {
        n += 1;
        c *= q / (n as f64 * n as f64);
        harmonic += 1.0 / n as f64;
        let term = if n % 2 == 1 { c * harmonic } else { -c * harmonic };
        sum += term;
        deriv_sum += term * n as f64;
        if c * harmonic <= f64::EPSILON * (sum.abs() + 1.0) {
            break;
        }
        if n >= MAX_TERMS {
            return Err(Error::NonConvergence(format!(
                "bessel_y: logarithmic series at x = {x} did not settle"
            )));
        }
    }
    let two_over_pi = std::f64::consts::FRAC_2_PI;
    let log_weight = (0.5 * x).ln() + EULER;
    let y0 = two_over_pi * (log_weight * j0 + sum);
    let y0_prime = two_over_pi * (j0 / x - log_weight * j1 + 2.0 * deriv_sum / x);
    let half_pi = 0.5 * std::f64::consts::PI;
    let y = y0 - nu * half_pi * j0;
    let yp = y0_prime + nu * half_pi * j1;
    Ok((y, yp, 8.0 * f64::EPSILON * (y.abs() + yp.abs())))
}

/// Large-argument modulus/phase expansion for J and Y together, valid
/// here for x > JY_SERIES_MAX_X and |order| < 2; derivatives come from
/// one extra evaluation at order nu - 1.
fn jy_asymptotic(nu: f64, x: f64) -> Result<JyParts> {
    let (j, y, e0) = hankel_pair(nu, x)?;
    let (jm1, ym1, e1) = hankel_pair(nu - 1.0, x)?;
    Ok(JyParts {
        j,
        j_prime: jm1 - (nu / x) * j,
        y,
        y_prime: ym1 - (nu / x) * y,
        err: e0 + e1,
    })
}

/// One order of the expansion: J = amp (P cos w - Q sin w),
/// Y = amp (P sin w + Q cos w), w = x - order pi/2 - pi/4, truncated at
/// its smallest term.
fn hankel_pair(order: f64, x: f64) -> Result<(f64, f64, f64)> {
    let four_mu2 = 4.0 * order * order;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0f64;
    let mut smallest = f64::INFINITY;
    let mut k = 0usize;
    loop {
        k += 1;
        let odd = 2.0 * k as f64 - 1.0;
        a *= (four_mu2 - odd * odd) / (k as f64 * 8.0 * x);
        if a.abs() >= smallest {
            // Asymptotic tail started growing; stop at the best point.
            break;
        }
        smallest = a.abs();
        // Terms alternate between the Q (odd k) and P (even k) sums with
        // alternating signs within each.
        match k % 4 {
            0 => p += a,
            1 => q += a,
            2 => p -= a,
            _ => q -= a,
        }
        if a.abs() < f64::EPSILON || k > 60 {
            break;
        }
    }
    let omega = x - order * std::f64::consts::FRAC_PI_2 - std::f64::consts::FRAC_PI_4;
    let amp = (2.0 / (std::f64::consts::PI * x)).sqrt();
    let (sin_w, cos_w) = omega.sin_cos();
    let j = amp * (p * cos_w - q * sin_w);
    let y = amp * (p * sin_w + q * cos_w);
    Ok((j, y, amp * (smallest + 4.0 * f64::EPSILON)))
}

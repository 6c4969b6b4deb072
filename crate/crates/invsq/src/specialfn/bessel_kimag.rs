//! Modified Bessel K of purely imaginary order i mu, real valued.
//!
//! Primary method: the integral representation
//! K_{i mu}(x) = int_0^inf e^{-x cosh t} cos(mu t) dt,
//! evaluated as e^{-x} times an adaptive quadrature of the scaled
//! integrand e^{-x(cosh t - 1)} cos(mu t), truncated where the double
//! exponential has fallen 45 e-foldings below its peak. The complex-order
//! series reflection formula serves as an independent cross-check in the
//! tests, not as the implementation.

use crate::error::{Error, Result};
use crate::oracle::integrate;

/// Largest validated imaginary order. Beyond this the answer is smaller
/// than e^{-pi mu / 2} while the integrand stays O(1), and the fixed
/// quadrature tolerance no longer guarantees eight relative digits.
pub(crate) const K_IMAG_MAX_MU: f64 = 5.0;

/// How many e-foldings of decay to keep before truncating the integral.
const DECAY_BUDGET: f64 = 45.0;
const QUAD_TOL: f64 = 1e-13;

/// (K_{i mu}(x), error bound) for 0 < mu <= 5, x > 0.
///
/// Relative error at most 1e-8 for x in (1e-4, 20] away from the zeros of
/// the function; near a zero the error bound is absolute on the local
/// oscillation scale.
pub(crate) fn k_imag_value(mu: f64, x: f64) -> Result<(f64, f64)> {
    if !(mu > 0.0) {
        return Err(Error::Domain(format!(
            "bessel_k_imag: order must be positive, got {mu}"
        )));
    }
    if mu > K_IMAG_MAX_MU {
        return Err(Error::OutOfRange(format!(
            "bessel_k_imag: order {mu} beyond the validated range (0, {K_IMAG_MAX_MU}]"
        )));
    }
    if !(x > 0.0) {
        return Err(Error::Domain(format!(
            "bessel_k_imag: argument must be positive, got {x}"
        )));
    }
    let t_max = (1.0 + DECAY_BUDGET / x).acosh();
    // The certifiable absolute error grows with the window, so the budget
    // scales with t_max; small arguments open windows past t = 20 where a
    // fixed 1e-13 sits below the quadrature's own rounding floor. The
    // returned bound reflects whatever was actually achieved.
    let tol = QUAD_TOL * t_max.max(1.0);
    // cosh t - 1 written as 2 sinh^2(t/2) keeps the exponent accurate
    // near t = 0.
    let scaled = integrate(
        |t| {
            let growth = 2.0 * (0.5 * t).sinh().powi(2);
            (-x * growth).exp() * (mu * t).cos()
        },
        0.0,
        t_max,
        tol,
    )?;
    let damp = (-x).exp();
    let value = scaled.value * damp;
    let err = scaled.abs_error * damp + 8.0 * f64::EPSILON * value.abs();
    Ok((value, err))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfn::gamma::arg_gamma_1p_i;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use num_complex::Complex64;

    // Reference values computed with an independent high-precision
    // implementation (40 significant digits, rounded to f64).
    const REFERENCE: [(f64, f64, f64); 12] = [
        (0.5, 0.01, 1.109886090545127886),
        (0.5, 1.0, 0.38404301690509269863),
        (0.5, 2.0, 0.1081283324091141338),
        (0.5, 19.0, 1.590435433221478943e-9),
        (1.0, 0.001, 0.4433546779067574206),
        (1.0, 1e-4, -0.09187112393308903295),
        (1.0, 1.0, 0.2894280370259921276),
        (1.0, 5.0, 0.0033670999885610447448),
        (2.0, 0.3, -0.05472560616630768028),
        (2.0, 1.5, 0.06933185721261963193),
        (3.0, 0.5, -0.01136253075247986953),
        (5.0, 1.0, 0.0003804618279975637280),
    ];

    #[test]
    fn reference_values() {
        for (mu, x, want) in REFERENCE {
            let (k, _) = k_imag_value(mu, x).unwrap();
            assert_relative_eq!(k, want, max_relative = 1e-8);
        }
    }

    #[test]
    fn error_estimate_is_honest() {
        for (mu, x, want) in REFERENCE {
            let (k, err) = k_imag_value(mu, x).unwrap();
            assert!((k - want).abs() <= err.max(1e-14 * want.abs()));
        }
    }

    /// Independent oracle: complex ascending series for I_{i mu} combined
    /// through the reflection formula
    /// K_{i mu}(x) = -pi Im I_{i mu}(x) / sinh(pi mu),
    /// with 1/Gamma(1 + i mu) assembled from its modulus identity and the
    /// separately tested phase. Only accurate at small x where the series
    /// terms stay O(1); that is all the cross-check needs.
    fn k_imag_series_oracle(mu: f64, x: f64) -> f64 {
        let pi = std::f64::consts::PI;
        let modulus = (pi * mu / (pi * mu).sinh()).sqrt();
        let phase = arg_gamma_1p_i(mu).unwrap();
        let t0 = Complex64::from_polar(
            1.0 / modulus,
            mu * (0.5 * x).ln() - phase,
        );
        let q = 0.25 * x * x;
        let mut term = t0;
        let mut sum = t0;
        for n in 1..200 {
            term = term * q / (Complex64::new(n as f64, 0.0) * Complex64::new(n as f64, mu));
            sum += term;
            if term.norm() <= f64::EPSILON * sum.norm() {
                break;
            }
        }
        -pi * sum.im / (pi * mu).sinh()
    }

    #[test]
    fn matches_series_reflection_oracle() {
        for (mu, x, _) in REFERENCE {
            if x > 2.0 {
                continue; // series oracle loses digits to cancellation there
            }
            let (k, _) = k_imag_value(mu, x).unwrap();
            let reference = k_imag_series_oracle(mu, x);
            assert_relative_eq!(k, reference, max_relative = 1e-8);
        }
    }

    #[test]
    fn small_argument_oscillation_law() {
        // K_{i mu}(x) -> sqrt(pi/(mu sinh(pi mu))) sin(Phi_mu - mu ln(x/2))
        // as x -> 0.
        let pi = std::f64::consts::PI;
        for &(mu, x) in &[(0.5_f64, 1e-4_f64), (1.0, 1e-4), (1.0, 1e-3), (3.0, 1e-3)] {
            let amp = (pi / (mu * (pi * mu).sinh())).sqrt();
            let phase = arg_gamma_1p_i(mu).unwrap();
            let predicted = amp * (phase - mu * (0.5 * x).ln()).sin();
            let (k, _) = k_imag_value(mu, x).unwrap();
            assert_abs_diff_eq!(k, predicted, epsilon = 1e-5 * amp);
        }
    }

    #[test]
    fn exponential_decay_at_large_argument() {
        let mut prev = f64::INFINITY;
        for &x in &[1.0, 2.0, 5.0, 10.0, 19.0] {
            let (k, _) = k_imag_value(0.5, x).unwrap();
            assert!(k.abs() < prev);
            prev = k.abs();
        }
        // Envelope: |K| <= sqrt(pi/(2x)) e^{-x} for x well past the
        // oscillatory region.
        let (k, _) = k_imag_value(0.5, 19.0).unwrap();
        assert!(k.abs() <= (std::f64::consts::PI / 38.0).sqrt() * (-19.0f64).exp());
    }

    #[test]
    fn domain_and_range_errors() {
        assert_eq!(k_imag_value(0.0, 1.0).unwrap_err().kind(), "domain");
        assert_eq!(k_imag_value(-1.0, 1.0).unwrap_err().kind(), "domain");
        assert_eq!(k_imag_value(5.5, 1.0).unwrap_err().kind(), "out_of_range");
        assert_eq!(k_imag_value(1.0, 0.0).unwrap_err().kind(), "domain");
        assert_eq!(k_imag_value(1.0, -2.0).unwrap_err().kind(), "domain");
    }
}

//! Finite-difference residual of the reduced radial equation.

use crate::error::{Error, Result};

/// Maximum normalized residual of `chi'' + (energy_sign + big_gamma/rho^2) chi`
/// over the given sample points.
///
/// `energy_sign` is `-1.0` for a bound profile (unit decay constant) and
/// `+1.0` for a scattering profile (unit wavenumber). The second derivative
/// is taken with a five-point central stencil, and each pointwise residual
/// is divided by the largest `|chi|` among the samples so the answer is
/// scale free. Exact solutions come out near 1e-7 (stencil roundoff);
/// anything that is not a solution lands orders of magnitude higher.
pub fn ode_residual<F>(chi: F, big_gamma: f64, energy_sign: f64, samples: &[f64]) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    ode_residual_with_step(chi, big_gamma, energy_sign, samples, 1e-4)
}

/// Same residual with an explicit stencil step scale (`h = step_scale * max(rho, 0.5)`).
///
/// The default scale assumes `chi` is smooth to machine precision. Profiles
/// built on quadrature (noise floor around 1e-13) need a larger step so the
/// noise divided by `h^2` stays below the truncation budget.
pub fn ode_residual_with_step<F>(
    chi: F,
    big_gamma: f64,
    energy_sign: f64,
    samples: &[f64],
    step_scale: f64,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(step_scale > 0.0 && step_scale < 0.05) {
        return Err(Error::Domain(format!(
            "ode_residual: step_scale must lie in (0, 0.05), got {step_scale}"
        )));
    }
    if energy_sign != -1.0 && energy_sign != 1.0 {
        return Err(Error::Domain(format!(
            "ode_residual: energy_sign must be -1 or +1, got {energy_sign}"
        )));
    }
    if samples.is_empty() {
        return Err(Error::Domain("ode_residual: no sample points".into()));
    }

    let mut max_abs: f64 = 0.0;
    for &rho in samples {
        if !(rho > 0.0) {
            return Err(Error::Domain(format!(
                "ode_residual: sample point {rho} is not positive"
            )));
        }
        let v = chi(rho);
        if !v.is_finite() {
            return Err(Error::Domain(format!(
                "ode_residual: chi({rho}) is not finite"
            )));
        }
        max_abs = max_abs.max(v.abs());
    }
    if max_abs == 0.0 {
        return Err(Error::Domain(
            "ode_residual: chi vanishes at every sample point".into(),
        ));
    }

    let mut worst: f64 = 0.0;
    for &rho in samples {
        // Step must stay well below rho so the stencil cannot cross zero.
        let h = step_scale * rho.max(0.5);
        let d2 = (-chi(rho - 2.0 * h) + 16.0 * chi(rho - h) - 30.0 * chi(rho)
            + 16.0 * chi(rho + h)
            - chi(rho + 2.0 * h))
            / (12.0 * h * h);
        if !d2.is_finite() {
            return Err(Error::Domain(format!(
                "ode_residual: stencil around rho = {rho} is not finite"
            )));
        }
        let res = d2 + (energy_sign + big_gamma / (rho * rho)) * chi(rho);
        worst = worst.max(res.abs());
    }
    Ok(worst / max_abs)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLES: [f64; 6] = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0];

    #[test]
    fn plain_exponential_solves_gamma_zero() {
        // chi = e^{-rho} solves chi'' - chi = 0.
        let r = ode_residual(|rho| (-rho).exp(), 0.0, -1.0, &SAMPLES).unwrap();
        assert!(r < 1e-6, "residual {r:.3e}");
    }

    #[test]
    fn decaying_spherical_wave() {
        // chi = e^{-rho}(1 + 1/rho) solves chi'' - (1 + 2/rho^2) chi = 0.
        let chi = |rho: f64| (-rho).exp() * (1.0 + 1.0 / rho);
        let r = ode_residual(chi, -2.0, -1.0, &SAMPLES).unwrap();
        assert!(r < 1e-6, "residual {r:.3e}");
    }

    #[test]
    fn oscillatory_spherical_wave() {
        // chi = sin(rho)/rho - cos(rho) solves chi'' + (1 - 2/rho^2) chi = 0.
        let chi = |rho: f64| rho.sin() / rho - rho.cos();
        let r = ode_residual(chi, -2.0, 1.0, &SAMPLES).unwrap();
        assert!(r < 1e-6, "residual {r:.3e}");
    }

    #[test]
    fn wrong_coupling_is_loud() {
        let r = ode_residual(|rho| (-rho).exp(), 0.3, -1.0, &SAMPLES).unwrap();
        assert!(r > 1e-2, "residual {r:.3e} should be far from zero");
    }

    #[test]
    fn rejects_bad_energy_sign() {
        let err = ode_residual(|rho| (-rho).exp(), 0.0, 0.5, &SAMPLES).unwrap_err();
        assert_eq!(err.kind(), "domain");
    }

    #[test]
    fn rejects_nonpositive_sample() {
        let err = ode_residual(|rho| (-rho).exp(), 0.0, -1.0, &[1.0, -2.0]).unwrap_err();
        assert_eq!(err.kind(), "domain");
    }

    #[test]
    fn rejects_bad_step_scale() {
        for bad in [0.0, -1e-4, 0.05, f64::NAN] {
            let err = ode_residual_with_step(|rho: f64| (-rho).exp(), 0.0, -1.0, &[1.0], bad)
                .unwrap_err();
            assert_eq!(err.kind(), "domain");
        }
    }

    #[test]
    fn wider_step_tolerates_noisy_profiles() {
        // Simulated quadrature noise at 1e-13: the default step amplifies it
        // past the usual 1e-6 budget, a wider step absorbs it.
        let noisy = |rho: f64| (-rho).exp() * (1.0 + 1e-13 * (1e9 * rho).sin());
        let coarse = ode_residual_with_step(noisy, 0.0, -1.0, &SAMPLES, 4e-3).unwrap();
        assert!(coarse < 1e-6, "residual {coarse:.3e}");
    }
}

//! Positive-energy states orthogonalized against the bound state.
//!
//! A continuum solution at wavenumber k1 is chi_1 = (k1 r)^{1/2}
//! [A1 J_nu(k1 r) + B1 Y_nu(k1 r)]. Hermiticity of the Hamiltonian over
//! the pair (bound state at scale k0, continuum state) reduces to the
//! r -> 0 limit of their Wronskian, and demanding that it vanish fixes
//!
//!   A1/B1 = [(k0/k1)^{2 nu} - cos pi nu] csc pi nu   (nu > 0),
//!   A1/B1 = (2/pi) ln(k0/k1)                          (nu = 0).
//!
//! Keeping only the regular J component, as the textbook treatment does,
//! leaves a nonzero overlap with the bound state; the quadrature here
//! exhibits that defect directly.

use crate::boundstate::chi_parts;
use crate::error::{Error, Result};
use crate::oracle::{integrate, richardson};
use crate::specialfn::{j_with_derivative, y_with_derivative};

const PI: f64 = std::f64::consts::PI;

/// Abel regularization scales used by the defect quadrature by default.
pub const DEFAULT_EPS_LIST: [f64; 4] = [0.2, 0.1, 0.05, 0.025];

/// A continuum state with coefficients stored at max(|A1|, |B1|) = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuumState {
    pub nu: f64,
    pub k1: f64,
    pub a1: f64,
    pub b1: f64,
}

fn check_order_window(nu: f64, who: &str) -> Result<()> {
    if !(nu >= 0.0 && nu < 0.5) {
        return Err(Error::Domain(format!(
            "{who}: order must lie in [0, 1/2), got {nu}"
        )));
    }
    Ok(())
}

fn check_wavenumber(k: f64, who: &str) -> Result<()> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Domain(format!(
            "{who}: wavenumber must be positive and finite, got {k}"
        )));
    }
    Ok(())
}

impl ContinuumState {
    /// State with explicit coefficients, rescaled to max(|A1|,|B1|) = 1.
    pub fn from_coefficients(nu: f64, k1: f64, a1: f64, b1: f64) -> Result<ContinuumState> {
        check_order_window(nu, "ContinuumState")?;
        check_wavenumber(k1, "ContinuumState")?;
        let m = a1.abs().max(b1.abs());
        if !(m > 0.0 && m.is_finite()) {
            return Err(Error::Domain(
                "ContinuumState: coefficients must be finite and not both zero".into(),
            ));
        }
        Ok(ContinuumState {
            nu,
            k1,
            a1: a1 / m,
            b1: b1 / m,
        })
    }

    /// State orthogonalized against the bound state of scale k0.
    pub fn orthogonalized(nu: f64, k0: f64, k1: f64) -> Result<ContinuumState> {
        check_wavenumber(k0, "ContinuumState::orthogonalized")?;
        let ratio = coefficient_ratio(nu, k0, k1)?;
        ContinuumState::from_coefficients(nu, k1, ratio, 1.0)
    }
}

/// The orthogonalizing coefficient ratio A1/B1. The logarithmic branch is
/// selected exactly at nu = 0; the power branch tends to it pointwise as
/// nu -> 0.
pub fn coefficient_ratio(nu: f64, k0: f64, k1: f64) -> Result<f64> {
    check_order_window(nu, "coefficient_ratio")?;
    check_wavenumber(k0, "coefficient_ratio")?;
    check_wavenumber(k1, "coefficient_ratio")?;
    if nu == 0.0 {
        return Ok(2.0 / PI * (k0 / k1).ln());
    }
    Ok(((k0 / k1).powf(2.0 * nu) - (PI * nu).cos()) / (PI * nu).sin())
}

/// chi_1(r) and its r derivative.
pub(crate) fn chi_continuum_parts(state: &ContinuumState, r: f64) -> Result<(f64, f64)> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!(
            "chi_continuum: radius must be positive and finite, got {r}"
        )));
    }
    let z = state.k1 * r;
    let (j, jp, _) = j_with_derivative(state.nu, z)?;
    let (y, yp, _) = y_with_derivative(state.nu, z)?;
    let mix = state.a1 * j + state.b1 * y;
    let mix_p = state.a1 * jp + state.b1 * yp;
    let root = z.sqrt();
    Ok((
        root * mix,
        state.k1 * (0.5 * mix / root + root * mix_p),
    ))
}

/// Continuum profile chi_1 = (k1 r)^{1/2} [A1 J_nu + B1 Y_nu](k1 r).
pub fn chi_continuum(state: &ContinuumState, r: f64) -> Result<f64> {
    Ok(chi_continuum_parts(state, r)?.0)
}

/// The Hermiticity boundary expression chi_0 chi_1' - chi_1 chi_0' at
/// radius r, with chi_0 the bound profile at scale k0 and order nu. For
/// an orthogonalized state the r -> 0 limit vanishes; for any other
/// coefficient choice it tends to a nonzero constant (nu > 0).
pub fn wronskian_boundary(nu: f64, k0: f64, state: &ContinuumState, r: f64) -> Result<f64> {
    check_wavenumber(k0, "wronskian_boundary")?;
    let (c0, c0p_rho) = chi_parts(nu, k0 * r)?;
    let c0p = k0 * c0p_rho;
    let (c1, c1p) = chi_continuum_parts(state, r)?;
    Ok(c0 * c1p - c1 * c0p)
}

/// Abel-regularized overlap of the bound and continuum states:
/// I(eps) = int chi_0 chi_1 e^{-eps r} dr computed by adaptive quadrature
/// for each eps in the (decreasing) list, then extrapolated to eps = 0.
/// The radial cutoff rides on the bound-state decay (40 / k0, tail below
/// 1e-17 of scale). Zero for an orthogonalized state; equals
/// W(0) / (k0^2 + k1^2) in general.
pub fn orthogonality_defect(
    nu: f64,
    k0: f64,
    state: &ContinuumState,
    eps_list: &[f64],
) -> Result<f64> {
    check_wavenumber(k0, "orthogonality_defect")?;
    if eps_list.is_empty() {
        return Err(Error::Domain(
            "orthogonality_defect: need at least one regularization scale".into(),
        ));
    }
    for pair in eps_list.windows(2) {
        if !(pair[1] < pair[0]) {
            return Err(Error::Domain(
                "orthogonality_defect: scales must decrease strictly".into(),
            ));
        }
    }
    if !(eps_list[eps_list.len() - 1] > 0.0) {
        return Err(Error::Domain(
            "orthogonality_defect: scales must be positive".into(),
        ));
    }
    let r_max = 40.0 / k0;
    let mut samples = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let overlap = integrate(
            |r| {
                let c0 = chi_parts(nu, k0 * r).unwrap().0;
                let c1 = chi_continuum_parts(state, r).unwrap().0;
                c0 * c1 * (-eps * r).exp()
            },
            1e-12,
            r_max,
            1e-10,
        )
        .map_err(|e| {
            Error::NonConvergence(format!(
                "orthogonality_defect: quadrature failed at eps = {eps}: {e}"
            ))
        })?;
        samples.push((eps, overlap.value));
    }
    richardson(&samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundstate::normalization_closed;
    use crate::oracle::ode_residual;
    use crate::specialfn::gamma_fn;
    use approx::assert_relative_eq;

    fn bound_norm(nu: f64, k0: f64) -> f64 {
        (normalization_closed(nu).unwrap() / k0).sqrt()
    }

    #[test]
    fn ratio_reference_points() {
        assert_eq!(coefficient_ratio(0.0, 1.0, 1.0).unwrap(), 0.0);
        // Equal scales at nu = 1/4 reduce to tan(pi/8).
        assert_relative_eq!(
            coefficient_ratio(0.25, 1.0, 1.0).unwrap(),
            (PI / 8.0).tan(),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            coefficient_ratio(0.25, 1.0, 1.0).unwrap(),
            0.414_213_562_373_095,
            max_relative = 1e-12
        );
        // k1 -> 0 is the E = 0 state: the Y admixture dies out.
        let s = ContinuumState::orthogonalized(0.25, 1.0, 1e-12).unwrap();
        assert_eq!(s.a1.abs(), 1.0);
        assert!(s.b1.abs() < 1e-5);
    }

    #[test]
    fn ratio_depends_only_on_the_scale_quotient() {
        for &c in &[2.0, 3.0, 0.7] {
            assert_relative_eq!(
                coefficient_ratio(0.3, c * 1.7, c * 0.4).unwrap(),
                coefficient_ratio(0.3, 1.7, 0.4).unwrap(),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn power_branch_tends_to_log_branch() {
        let (k0, k1) = (std::f64::consts::E, 1.0);
        let tiny = coefficient_ratio(1e-4, k0, k1).unwrap();
        let log = coefficient_ratio(0.0, k0, k1).unwrap();
        assert_relative_eq!(tiny, log, max_relative = 1e-3);
    }

    #[test]
    fn ratio_domain_checks() {
        assert_eq!(coefficient_ratio(0.5, 1.0, 1.0).unwrap_err().kind(), "domain");
        assert_eq!(coefficient_ratio(-0.1, 1.0, 1.0).unwrap_err().kind(), "domain");
        assert_eq!(coefficient_ratio(0.2, 0.0, 1.0).unwrap_err().kind(), "domain");
        assert_eq!(coefficient_ratio(0.2, 1.0, -1.0).unwrap_err().kind(), "domain");
    }

    #[test]
    fn coefficients_are_normalized() {
        let s = ContinuumState::from_coefficients(0.3, 2.0, 5.0, -3.0).unwrap();
        assert_eq!(s.a1, 1.0);
        assert_eq!(s.b1, -0.6);
        let s = ContinuumState::orthogonalized(0.3, 1.0, 1.0).unwrap();
        assert_eq!(s.a1.abs().max(s.b1.abs()), 1.0);
        assert_eq!(
            ContinuumState::from_coefficients(0.3, 1.0, 0.0, 0.0)
                .unwrap_err()
                .kind(),
            "domain"
        );
    }

    #[test]
    fn half_order_pure_j_is_a_sine() {
        // (z)^{1/2} J_{1/2}(z) = sqrt(2/pi) sin z; checked at the formula
        // level since states themselves keep nu < 1/2.
        for &z in &[0.7_f64, 2.0, 9.0] {
            let (j, _, _) = j_with_derivative(0.5, z).unwrap();
            assert_relative_eq!(
                z.sqrt() * j,
                (2.0 / PI).sqrt() * z.sin(),
                max_relative = 1e-9
            );
        }
    }

    #[test]
    fn pure_y_state_small_r_power_law() {
        let nu = 0.3;
        let state = ContinuumState::from_coefficients(nu, 1.0, 0.0, 1.0).unwrap();
        let r = 1e-6_f64;
        let expected = -r.sqrt() * (0.5 * r).powf(-nu) * gamma_fn(nu).unwrap() / PI;
        assert_relative_eq!(
            chi_continuum(&state, r).unwrap(),
            expected,
            max_relative = 1e-3
        );
    }

    #[test]
    fn continuum_profile_solves_the_radial_equation() {
        // Samples start at 0.7: the stencil noise floor eps/h^2 of the
        // residual oracle crosses 1e-6 for rho below ~0.5. The top sample
        // sits past the series/asymptotic seam at 12, where cancellation
        // noise in the alternating series would likewise be amplified.
        let samples = [0.7, 1.0, 2.0, 5.0, 13.0];
        for &(nu, k1) in &[(0.0, 1.0), (0.25, 1.0), (0.3, 2.0)] {
            let state = ContinuumState::orthogonalized(nu, 1.0, k1).unwrap();
            // In z = k1 r the equation reads chi'' + (1 + Gamma/z^2) chi = 0.
            let r = ode_residual(
                |z| chi_continuum(&state, z / k1).unwrap(),
                0.25 - nu * nu,
                1.0,
                &samples,
            )
            .unwrap();
            assert!(r < 1e-6, "nu={nu} k1={k1}: residual {r}");
        }
    }

    #[test]
    fn wronskian_vanishes_for_orthogonalized_states() {
        for &(nu, k0, k1) in &[(0.3, 1.0, 1.0), (0.25, 1.0, 2.0), (0.0, 1.0, 3.0)] {
            let state = ContinuumState::orthogonalized(nu, k0, k1).unwrap();
            let r = 1e-5;
            let w = wronskian_boundary(nu, k0, &state, r).unwrap();
            let (c0, c0p) = chi_parts(nu, k0 * r).unwrap();
            let (c1, c1p) = chi_continuum_parts(&state, r).unwrap();
            let scale = (c0 * c1p).abs() + (c1 * k0 * c0p).abs();
            assert!(
                w.abs() <= 1e-4 * scale,
                "nu={nu} k1={k1}: w={w:.3e} scale={scale:.3e}"
            );
        }
    }

    #[test]
    fn wronskian_survives_for_detuned_coefficients() {
        let (nu, k0, k1) = (0.3, 1.0, 1.0);
        let ratio = coefficient_ratio(nu, k0, k1).unwrap();
        let bad = ContinuumState::from_coefficients(nu, k1, 2.0 * ratio, 1.0).unwrap();
        let w6 = wronskian_boundary(nu, k0, &bad, 1e-6).unwrap();
        let w8 = wronskian_boundary(nu, k0, &bad, 1e-8).unwrap();
        assert!(w6.abs() > 1e-3);
        // The limit is a constant: both radii see the same value.
        assert_relative_eq!(w6, w8, max_relative = 1e-2);
    }

    #[test]
    fn defect_vanishes_for_orthogonalized_states() {
        // The regression pins sit on the observed extrapolation residue;
        // the k1 = 0.5 case converges slowest in the Abel scale.
        for &(nu, k0, k1, pin) in &[
            (0.25, 1.0, 2.0, 5e-6),
            (0.0, 1.0, 3.0, 5e-6),
            (0.4, 1.0, 0.5, 2e-5),
        ] {
            let state = ContinuumState::orthogonalized(nu, k0, k1).unwrap();
            let defect =
                orthogonality_defect(nu, k0, &state, &DEFAULT_EPS_LIST).unwrap();
            let bound = 1e-4 * bound_norm(nu, k0);
            assert!(
                defect.abs() <= bound,
                "nu={nu} k1={k1}: defect {defect:.3e} vs bound {bound:.3e}"
            );
            assert!(defect.abs() <= pin, "nu={nu} k1={k1}: defect {defect:.3e}");
        }
    }

    #[test]
    fn pure_j_state_misses_orthogonality_by_the_closed_form() {
        // int r J_nu(k1 r) K_nu(k0 r) dr = (k1/k0)^nu / (k0^2 + k1^2)
        // turns the defect of the J-only choice into sqrt(k0 k1)
        // (k1/k0)^nu / (k0^2 + k1^2).
        for &(nu, k0, k1) in &[(0.25, 1.0, 2.0), (0.0, 1.0, 3.0), (0.4, 1.0, 0.5)] {
            let state = ContinuumState::from_coefficients(nu, k1, 1.0, 0.0).unwrap();
            let defect =
                orthogonality_defect(nu, k0, &state, &DEFAULT_EPS_LIST).unwrap();
            let expected =
                (k0 * k1).sqrt() * (k1 / k0).powf(nu) / (k0 * k0 + k1 * k1);
            assert_relative_eq!(defect, expected, max_relative = 1e-3);
            assert!(defect.abs() > 100.0 * 1e-4 * bound_norm(nu, k0));
        }
    }

    #[test]
    fn defect_equals_wronskian_limit_over_scale_sum() {
        let (nu, k0, k1) = (0.3, 1.0, 1.0);
        let ratio = coefficient_ratio(nu, k0, k1).unwrap();
        let bad = ContinuumState::from_coefficients(nu, k1, 2.0 * ratio, 1.0).unwrap();
        let w0 = wronskian_boundary(nu, k0, &bad, 1e-8).unwrap();
        let defect = orthogonality_defect(nu, k0, &bad, &DEFAULT_EPS_LIST).unwrap();
        assert_relative_eq!(defect, w0 / (k0 * k0 + k1 * k1), max_relative = 1e-2);
    }

    #[test]
    fn origin_normalization_integral_converges_for_pure_y() {
        // chi_1^2 ~ r^{1 - 2 nu} near zero, integrable for nu < 1/2 even
        // for the irregular component alone.
        let state = ContinuumState::from_coefficients(0.3, 1.0, 0.0, 1.0).unwrap();
        let f = |r: f64| {
            let c = chi_continuum(&state, r).unwrap();
            c * c
        };
        let whole = integrate(f, 1e-12, 0.01, 1e-12).unwrap().value;
        let inner = integrate(f, 1e-12, 1e-6, 1e-14).unwrap().value;
        assert!(whole.is_finite() && whole > 0.0);
        assert!(inner < 0.01 * whole);
    }

    #[test]
    fn defect_rejects_bad_scale_lists() {
        let state = ContinuumState::orthogonalized(0.25, 1.0, 2.0).unwrap();
        assert_eq!(
            orthogonality_defect(0.25, 1.0, &state, &[])
                .unwrap_err()
                .kind(),
            "domain"
        );
        assert_eq!(
            orthogonality_defect(0.25, 1.0, &state, &[0.1, 0.2])
                .unwrap_err()
                .kind(),
            "domain"
        );
        assert_eq!(
            orthogonality_defect(0.25, 1.0, &state, &[0.1, -0.2])
                .unwrap_err()
                .kind(),
            "domain"
        );
    }
}

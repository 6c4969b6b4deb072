//! The subcritical bound state and its closed-form integrals.
//!
//! Inside the admissibility window the bound-state profile in the
//! dimensionless radius rho = kappa r is chi = rho^{1/2} K_nu(rho),
//! nodeless and exponentially decaying. Three integrals over it have
//! closed forms: the origin boundary term of the momentum operator,
//! the normalization, and the Hardy-inequality integral. Their balance
//! reproduces the energy expectation identity exactly, which is the
//! analytic backbone the rest of the crate is checked against.
//!
//! Convention: hbar = 2m = 1, so E = -kappa^2. The potential alone fixes
//! no energy scale; kappa is a caller-supplied parameter throughout.

use serde::{Deserialize, Serialize};

use crate::coupling::{bound_state_allowed, CouplingParams};
use crate::error::{Error, Result};
use crate::specialfn::{digamma, gamma_fn, k_with_derivative};

/// A bound state: an admissible coupling plus the (externally fixed)
/// inverse decay length kappa, E = -kappa^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    pub params: CouplingParams,
    pub kappa: f64,
}

impl BoundState {
    pub fn new(params: CouplingParams, kappa: f64) -> Result<BoundState> {
        if !bound_state_allowed(&params) {
            return Err(Error::Domain(format!(
                "BoundState: regime {:?} admits no proper bound state",
                params.regime
            )));
        }
        check_kappa(kappa)?;
        Ok(BoundState { params, kappa })
    }

    /// Real order nu in [0, 1/2); zero in the transitional case.
    pub fn nu(&self) -> f64 {
        self.params
            .real_order()
            .expect("admissible regimes always carry a real order")
    }

    pub fn energy(&self) -> f64 {
        -self.kappa * self.kappa
    }
}

/// The three closed-form integrals in rho-units plus the residual of the
/// energy balance (hardy - boundary = -kappa * normalization).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormChecks {
    pub boundary_term: f64,
    pub normalization: f64,
    pub hardy_integral: f64,
    pub consistency_residual: f64,
}

fn check_kappa(kappa: f64) -> Result<()> {
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::Domain(format!(
            "kappa must be a finite positive scale, got {kappa}"
        )));
    }
    Ok(())
}

/// chi(rho) and d chi/d rho for real order nu, chi = rho^{1/2} K_nu(rho).
pub(crate) fn chi_parts(nu: f64, rho: f64) -> Result<(f64, f64)> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::Domain(format!(
            "chi: rho must be positive and finite, got {rho}"
        )));
    }
    let (k, kp, _) = k_with_derivative(nu, rho)?;
    let root = rho.sqrt();
    Ok((root * k, 0.5 * k / root + root * kp))
}

/// Bound-state profile chi = rho^{1/2} K_nu(rho) in rho-units.
pub fn chi(state: &BoundState, rho: f64) -> Result<f64> {
    Ok(chi_parts(state.nu(), rho)?.0)
}

/// Same profile addressed by the physical radius r; depends on (kappa, r)
/// only through the product rho = kappa r.
pub fn chi_at_radius(state: &BoundState, r: f64) -> Result<f64> {
    chi(state, state.kappa * r)
}

/// Four-term small-rho expansion of chi, valid for 0 < rho <= 0.1:
/// both leading powers rho^{1/2 -+ nu} with their first rho^2 corrections,
/// or the logarithmic form when nu = 0. Relative deviation from chi is
/// below 0.05 rho^{4 - nu} across the admissible orders.
pub fn chi_near_origin(state: &BoundState, rho: f64) -> Result<f64> {
    if !(rho > 0.0 && rho <= 0.1) {
        return Err(Error::Domain(format!(
            "chi_near_origin: rho must lie in (0, 0.1], got {rho}"
        )));
    }
    let nu = state.nu();
    let q = 0.25 * rho * rho;
    let root = rho.sqrt();
    if nu == 0.0 {
        let log_weight = (0.5 * rho).ln();
        let s = (digamma(1.0)? - log_weight) + q * (digamma(2.0)? - log_weight);
        return Ok(root * s);
    }
    let pref = 0.5 * std::f64::consts::PI / (std::f64::consts::PI * nu).sin();
    let falling = (0.5 * rho).powf(-nu) * (1.0 / gamma_fn(1.0 - nu)? + q / gamma_fn(2.0 - nu)?);
    let rising = (0.5 * rho).powf(nu) * (1.0 / gamma_fn(1.0 + nu)? + q / gamma_fn(2.0 + nu)?);
    Ok(root * pref * (falling - rising))
}

fn check_open_unit_order(nu: f64, who: &str) -> Result<()> {
    if nu == 0.0 || nu == 1.0 {
        return Err(Error::Pole(format!(
            "{who}: csc(pi nu) diverges at nu = {nu}"
        )));
    }
    if !(nu > 0.0 && nu < 1.0) {
        return Err(Error::Domain(format!(
            "{who}: order must lie in (0, 1), got {nu}"
        )));
    }
    Ok(())
}

/// Evaluated origin bracket of the momentum-operator boundary term,
/// [chi (d/dr + (nu - 1/2)/r) chi] from 0 to infinity = pi kappa csc(pi nu) / 2.
pub fn boundary_term_closed(nu: f64, kappa: f64) -> Result<f64> {
    check_open_unit_order(nu, "boundary_term_closed")?;
    check_kappa(kappa)?;
    Ok(0.5 * std::f64::consts::PI * kappa / (std::f64::consts::PI * nu).sin())
}

/// Normalization integral over rho K_nu(rho)^2 in rho-units:
/// pi nu / (2 sin pi nu), continued to 1/2 at nu = 0.
pub fn normalization_closed(nu: f64) -> Result<f64> {
    if !(nu >= 0.0 && nu < 1.0) {
        return Err(Error::Domain(format!(
            "normalization_closed: integral converges only for 0 <= nu < 1, got {nu}"
        )));
    }
    if nu == 0.0 {
        return Ok(0.5);
    }
    Ok(0.5 * std::f64::consts::PI * nu / (std::f64::consts::PI * nu).sin())
}

/// Hardy-form integral of the squared factored derivative,
/// int [chi' + (nu - 1/2) chi / r]^2 dr = pi kappa (1 - nu) csc(pi nu) / 2.
pub fn hardy_integral_closed(nu: f64, kappa: f64) -> Result<f64> {
    check_open_unit_order(nu, "hardy_integral_closed")?;
    check_kappa(kappa)?;
    Ok(0.5 * std::f64::consts::PI * kappa * (1.0 - nu) / (std::f64::consts::PI * nu).sin())
}

/// Assembles the three closed forms and the residual of the identity
/// hardy - boundary = -kappa * normalization, i.e. E <psi|psi> equals the
/// Hardy integral minus the boundary term. The normalization field is in
/// rho-units; the kappa factor sits on the balance.
pub fn energy_balance(nu: f64, kappa: f64) -> Result<ClosedFormChecks> {
    let boundary_term = boundary_term_closed(nu, kappa)?;
    let normalization = normalization_closed(nu)?;
    let hardy_integral = hardy_integral_closed(nu, kappa)?;
    let consistency_residual = (hardy_integral - boundary_term + kappa * normalization).abs();
    Ok(ClosedFormChecks {
        boundary_term,
        normalization,
        hardy_integral,
        consistency_residual,
    })
}

/// Ratio of the irregular (r^{1/2-nu}) to the regular (r^{1/2+nu})
/// coefficient in the near-origin expansion of the bound state:
/// B/A = -Gamma(1+nu) (kappa/2)^{-2 nu} / Gamma(1-nu). Nonzero for every
/// 0 < nu < 1/2, which is what forces the boundary term to survive.
pub fn coefficient_ratio_ba(nu: f64, kappa: f64) -> Result<f64> {
    if !(nu > 0.0 && nu < 0.5) {
        return Err(Error::Domain(format!(
            "coefficient_ratio_ba: order must lie in (0, 1/2), got {nu}"
        )));
    }
    check_kappa(kappa)?;
    Ok(-gamma_fn(1.0 + nu)? * (0.5 * kappa).powf(-2.0 * nu) / gamma_fn(1.0 - nu)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::make_params;
    use crate::oracle::{integrate, ode_residual};
    use approx::assert_relative_eq;

    const PI: f64 = std::f64::consts::PI;

    /// State with real order nu (gamma = 1/4 - nu^2 at ell = 0).
    fn state_with_nu(nu: f64, kappa: f64) -> BoundState {
        let params = make_params(0, 0.25 - nu * nu).unwrap();
        BoundState::new(params, kappa).unwrap()
    }

    /// Large-rho expansion of K summed to its smallest term; relative
    /// truncation ~ e^{-2 rho} at the stopping point.
    fn chi_asymptotic_oracle(nu: f64, rho: f64) -> f64 {
        let mut term = 1.0_f64;
        let mut sum = 1.0;
        let mut k = 0;
        loop {
            k += 1;
            let next = term * (4.0 * nu * nu - (2.0 * k as f64 - 1.0).powi(2))
                / (k as f64 * 8.0 * rho);
            if next.abs() >= term.abs() || k > 40 {
                break;
            }
            term = next;
            sum += term;
        }
        (0.5 * PI).sqrt() * (-rho).exp() * sum
    }

    #[test]
    fn construction_requires_admissible_regime() {
        assert!(BoundState::new(make_params(0, 0.2).unwrap(), 1.0).is_ok());
        assert!(BoundState::new(make_params(0, 0.25).unwrap(), 1.0).is_ok());
        let hyper = make_params(0, 1.0).unwrap();
        assert_eq!(BoundState::new(hyper, 1.0).unwrap_err().kind(), "domain");
        let none = make_params(1, 1.5).unwrap();
        assert_eq!(BoundState::new(none, 1.0).unwrap_err().kind(), "domain");
        let ok = make_params(0, 0.2).unwrap();
        assert_eq!(BoundState::new(ok, 0.0).unwrap_err().kind(), "domain");
        assert_eq!(BoundState::new(ok, -2.0).unwrap_err().kind(), "domain");
    }

    #[test]
    fn half_order_profile_is_pure_exponential() {
        // rho^{1/2} K_{1/2}(rho) = sqrt(pi/2) e^{-rho} exactly.
        for &rho in &[0.3, 1.0, 5.0, 20.0] {
            let (c, _) = chi_parts(0.5, rho).unwrap();
            assert_relative_eq!(
                c,
                (0.5 * PI).sqrt() * (-rho).exp(),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn transitional_profile_is_logarithmic_near_origin() {
        let state = state_with_nu(0.0, 1.0);
        let rho: f64 = 1e-4;
        let expected = rho.sqrt() * (digamma(1.0).unwrap() - (0.5 * rho).ln());
        assert_relative_eq!(chi(&state, rho).unwrap(), expected, max_relative = 1e-8);
    }

    #[test]
    fn profile_matches_large_rho_expansion() {
        for &nu in &[0.0, 0.25, 0.45] {
            let state = state_with_nu(nu, 1.0);
            let got = chi(&state, 10.0).unwrap();
            assert_relative_eq!(got, chi_asymptotic_oracle(nu, 10.0), max_relative = 1e-6);
        }
    }

    #[test]
    fn profile_is_nodeless() {
        for &nu in &[0.0, 0.1, 0.25, 0.49] {
            let state = state_with_nu(nu, 1.0);
            let mut rho = 1e-6;
            while rho <= 30.0 {
                assert!(chi(&state, rho).unwrap() > 0.0, "nu={nu} rho={rho}");
                rho *= 1.9;
            }
        }
    }

    #[test]
    fn profile_solves_the_radial_equation() {
        let samples = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0];
        for &nu in &[0.0, 0.25, 0.49] {
            let r = ode_residual(
                |rho| chi_parts(nu, rho).unwrap().0,
                0.25 - nu * nu,
                -1.0,
                &samples,
            )
            .unwrap();
            assert!(r < 1e-6, "nu={nu}: residual {r}");
        }
    }

    #[test]
    fn scale_covariance_through_rho_only() {
        let p = make_params(0, 0.16).unwrap();
        let a = BoundState::new(p, 1.0).unwrap();
        let b = BoundState::new(p, 2.0).unwrap();
        for &r in &[0.25, 1.0, 7.5] {
            let va = chi_at_radius(&a, r).unwrap();
            let vb = chi_at_radius(&b, 0.5 * r).unwrap();
            assert_eq!(va.to_bits(), vb.to_bits());
        }
    }

    #[test]
    fn near_origin_expansion_tracks_chi() {
        // |near - chi| / chi <= 0.05 rho^{4 - nu}; the reference point at
        // rho = 0.01, nu = 0.3 sits far inside that envelope.
        for &nu in &[0.1, 0.3, 0.45] {
            let state = state_with_nu(nu, 1.0);
            for &rho in &[0.01, 0.05, 0.1] {
                let full = chi(&state, rho).unwrap();
                let approxed = chi_near_origin(&state, rho).unwrap();
                let rel = ((approxed - full) / full).abs();
                assert!(
                    rel <= 0.05 * rho.powf(4.0 - nu),
                    "nu={nu} rho={rho}: rel {rel:.3e}"
                );
            }
        }
        let state = state_with_nu(0.3, 1.0);
        let full = chi(&state, 0.01).unwrap();
        let approxed = chi_near_origin(&state, 0.01).unwrap();
        assert!(((approxed - full) / full).abs() <= 1e-4);
    }

    #[test]
    fn near_origin_leading_terms() {
        let nu = 0.25;
        let state = state_with_nu(nu, 1.0);
        let rho: f64 = 0.01;
        let pref = 0.5 * PI / (PI * nu).sin();
        let dominant = pref * rho.sqrt() * (0.5 * rho).powf(-nu) / gamma_fn(1.0 - nu).unwrap();
        let subdominant = pref * rho.sqrt() * (0.5 * rho).powf(nu) / gamma_fn(1.0 + nu).unwrap();
        assert_relative_eq!(
            chi_near_origin(&state, rho).unwrap(),
            dominant - subdominant,
            max_relative = 1e-4
        );

        let transitional = state_with_nu(0.0, 1.0);
        let expected = rho.sqrt() * (digamma(1.0).unwrap() - (0.5 * rho).ln());
        assert_relative_eq!(
            chi_near_origin(&transitional, rho).unwrap(),
            expected,
            max_relative = 1e-4
        );
    }

    #[test]
    fn near_origin_domain() {
        let state = state_with_nu(0.3, 1.0);
        assert_eq!(chi_near_origin(&state, 0.2).unwrap_err().kind(), "domain");
        assert_eq!(chi_near_origin(&state, 0.0).unwrap_err().kind(), "domain");
        assert_eq!(chi(&state, -1.0).unwrap_err().kind(), "domain");
    }

    #[test]
    fn boundary_term_reference_values() {
        assert_relative_eq!(
            boundary_term_closed(0.5, 1.0).unwrap(),
            0.5 * PI,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            boundary_term_closed(0.25, 2.0).unwrap(),
            PI * std::f64::consts::SQRT_2,
            max_relative = 1e-14
        );
        assert_eq!(boundary_term_closed(0.0, 1.0).unwrap_err().kind(), "pole");
        assert_eq!(boundary_term_closed(1.0, 1.0).unwrap_err().kind(), "pole");
        assert_eq!(boundary_term_closed(1.3, 1.0).unwrap_err().kind(), "domain");
    }

    #[test]
    fn boundary_term_matches_numeric_bracket() {
        // The bracket chi (chi' + (nu - 1/2) chi / rho) tends to
        // -pi csc(pi nu)/2 as rho -> 0 and vanishes at large rho. The
        // evaluation point balances the rho^{2 nu} truncation against
        // cancellation, which caps the attainable accuracy near 1e-7.
        for &nu in &[0.1, 0.25, 0.4] {
            let rho_lo = 10.0_f64.powf(-8.0 / (2.0 * nu));
            let bracket = |rho: f64| {
                let (c, cp) = chi_parts(nu, rho).unwrap();
                c * (cp + (nu - 0.5) * c / rho)
            };
            let closed = boundary_term_closed(nu, 1.0).unwrap();
            assert_relative_eq!(-bracket(rho_lo), closed, max_relative = 1e-6);
            assert!(bracket(30.0).abs() < 1e-20);
        }
    }

    #[test]
    fn normalization_reference_values() {
        assert_eq!(normalization_closed(0.0).unwrap(), 0.5);
        assert_relative_eq!(
            normalization_closed(0.5).unwrap(),
            0.25 * PI,
            max_relative = 1e-14
        );
        assert_eq!(normalization_closed(-0.1).unwrap_err().kind(), "domain");
        assert_eq!(normalization_closed(1.0).unwrap_err().kind(), "domain");
    }

    #[test]
    fn normalization_matches_quadrature() {
        for &nu in &[0.0, 0.1, 0.25, 0.3, 0.4] {
            let q = integrate(
                |rho| {
                    let (c, _) = chi_parts(nu, rho).unwrap();
                    c * c
                },
                1e-12,
                40.0,
                1e-10,
            )
            .unwrap();
            assert_relative_eq!(
                q.value,
                normalization_closed(nu).unwrap(),
                max_relative = 1e-8
            );
        }
    }

    #[test]
    fn hardy_reference_values() {
        assert_relative_eq!(
            hardy_integral_closed(0.5, 1.0).unwrap(),
            0.25 * PI,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            hardy_integral_closed(0.25, 1.0).unwrap(),
            0.375 * PI * std::f64::consts::SQRT_2,
            max_relative = 1e-14
        );
        assert_eq!(hardy_integral_closed(0.0, 1.0).unwrap_err().kind(), "pole");
    }

    #[test]
    fn hardy_matches_quadrature() {
        let nu = 0.35;
        let q = integrate(
            |rho| {
                let (c, cp) = chi_parts(nu, rho).unwrap();
                let factored = cp + (nu - 0.5) * c / rho;
                factored * factored
            },
            1e-12,
            40.0,
            1e-9,
        )
        .unwrap();
        assert_relative_eq!(
            q.value,
            hardy_integral_closed(nu, 1.0).unwrap(),
            max_relative = 1e-7
        );
    }

    #[test]
    fn energy_balance_is_tight() {
        for &(nu, kappa) in &[(0.25, 1.0), (0.45, 3.0), (0.1, 0.5), (0.49, 10.0)] {
            let checks = energy_balance(nu, kappa).unwrap();
            assert!(
                checks.consistency_residual <= 1e-10,
                "nu={nu} kappa={kappa}: residual {}",
                checks.consistency_residual
            );
            // E <psi|psi> < 0: the Hardy integral never cancels the
            // boundary term.
            assert!(checks.hardy_integral - checks.boundary_term < 0.0);
        }
    }

    #[test]
    fn coefficient_ratio_reference() {
        let got = coefficient_ratio_ba(0.25, 2.0).unwrap();
        let expected = -gamma_fn(1.25).unwrap() / gamma_fn(0.75).unwrap();
        assert_relative_eq!(got, expected, max_relative = 1e-14);
        // Deep binding drives the irregular admixture to zero.
        assert!(coefficient_ratio_ba(0.25, 1e8).unwrap().abs() < 1e-3);
        assert!(
            coefficient_ratio_ba(0.25, 1e8).unwrap().abs()
                < coefficient_ratio_ba(0.25, 1.0).unwrap().abs()
        );
        assert_eq!(coefficient_ratio_ba(0.0, 1.0).unwrap_err().kind(), "domain");
        assert_eq!(coefficient_ratio_ba(0.5, 1.0).unwrap_err().kind(), "domain");
    }

    #[test]
    fn coefficient_ratio_matches_two_point_extraction() {
        // Fit chi = a r^{1/2+nu} + b r^{1/2-nu} at two small radii
        // (kappa = 1, so rho = r) and compare b/a to the closed form. The
        // fit truncation scales as r^{2-2nu}, so the radii sit low.
        let nu = 0.3;
        let kappa = 1.0;
        let (r1, r2) = (1e-4, 2e-4);
        let (c1, _) = chi_parts(nu, kappa * r1).unwrap();
        let (c2, _) = chi_parts(nu, kappa * r2).unwrap();
        let (p, q) = (0.5 + nu, 0.5 - nu);
        let det = r1.powf(p) * r2.powf(q) - r2.powf(p) * r1.powf(q);
        let a = (c1 * r2.powf(q) - c2 * r1.powf(q)) / det;
        let b = (c2 * r1.powf(p) - c1 * r2.powf(p)) / det;
        assert_relative_eq!(
            b / a,
            coefficient_ratio_ba(nu, kappa).unwrap(),
            max_relative = 1e-5
        );
    }
}

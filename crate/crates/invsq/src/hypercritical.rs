//! Strong-coupling spectrum: geometric level ladder and oscillatory profile.
//!
//! Once the effective coupling passes the critical value the exterior order
//! turns imaginary, `nu = i mu`, and the single bound level is replaced by a
//! self-similar tower `E_n = -E0 e^{2 pi n / mu}` that accumulates at zero
//! energy from below as `n -> -inf` and runs away to `-inf` as `n` grows.
//! The radial profile is `chi = rho^{1/2} K_{i mu}(rho)`; near the origin it
//! oscillates in `ln rho` with period `pi / mu` and a phase anchored by
//! `arg Gamma(1 + i mu)`, which is what makes neighbouring levels orthogonal
//! despite the potential having no scale of its own.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::brent;
use crate::specialfn::{arg_gamma_1p_i, k_imag_value};

/// Largest |2 pi n / mu| a ladder rung may have; beyond this the level
/// magnitude cannot be told apart from zero or infinity in f64.
const MAX_LEVEL_EXPONENT: f64 = 700.0;

/// Refuse to enumerate absurdly long ladders rather than exhaust memory.
const MAX_LEVELS: i64 = 1_000_000;

/// The small-argument phase law only applies on this window.
const NEAR_ORIGIN_MAX_RHO: f64 = 0.05;

/// Geometric tower of strong-coupling levels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumLadder {
    /// Imaginary part of the order, `sqrt(Gamma_eff - 1/4)`.
    pub mu: f64,
    /// Magnitude of the reference level at `n = 0`.
    pub e0_magnitude: f64,
    /// First level index (inclusive).
    pub n_min: i32,
    /// Last level index (inclusive).
    pub n_max: i32,
    /// `E_n = -e0_magnitude exp(2 pi n / mu)` for `n = n_min..=n_max`.
    pub energies: Vec<f64>,
}

impl SpectrumLadder {
    /// Energy of rung `n`, if it lies inside the stored window.
    pub fn level_energy(&self, n: i32) -> Option<f64> {
        let offset = i64::from(n) - i64::from(self.n_min);
        usize::try_from(offset).ok().and_then(|i| self.energies.get(i)).copied()
    }
}

/// Build the ladder `E_n = -e0_magnitude e^{2 pi n / mu}` for `n` in
/// `n_min..=n_max`.
///
/// Every rung must be representable: an exponent outside `[-700, 700]`, or a
/// product that overflows or underflows to zero, is reported as out of range
/// instead of being silently rounded to `0` or `-inf`.
pub fn ladder(mu: f64, e0_magnitude: f64, n_min: i32, n_max: i32) -> Result<SpectrumLadder> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::Domain(format!(
            "ladder: mu must be positive and finite, got {mu}"
        )));
    }
    if !(e0_magnitude > 0.0 && e0_magnitude.is_finite()) {
        return Err(Error::Domain(format!(
            "ladder: e0_magnitude must be positive and finite, got {e0_magnitude}"
        )));
    }
    if n_min > n_max {
        return Err(Error::Domain(format!(
            "ladder: n_min = {n_min} exceeds n_max = {n_max}"
        )));
    }
    let count = i64::from(n_max) - i64::from(n_min) + 1;
    if count > MAX_LEVELS {
        return Err(Error::Domain(format!(
            "ladder: refusing to enumerate {count} levels (limit {MAX_LEVELS})"
        )));
    }

    let mut energies = Vec::with_capacity(count as usize);
    for n in n_min..=n_max {
        let exponent = 2.0 * PI * f64::from(n) / mu;
        if exponent.abs() > MAX_LEVEL_EXPONENT {
            return Err(Error::OutOfRange(format!(
                "ladder: rung n = {n} has exponent 2 pi n / mu = {exponent:.3e}, \
                 outside [-{MAX_LEVEL_EXPONENT}, {MAX_LEVEL_EXPONENT}]"
            )));
        }
        let energy = -e0_magnitude * exponent.exp();
        if !(energy < 0.0 && energy.is_finite()) {
            return Err(Error::OutOfRange(format!(
                "ladder: rung n = {n} is not representable at depth {e0_magnitude}"
            )));
        }
        energies.push(energy);
    }
    Ok(SpectrumLadder {
        mu,
        e0_magnitude,
        n_min,
        n_max,
        energies,
    })
}

/// Radial profile `chi(rho) = rho^{1/2} K_{i mu}(rho)` of a strong-coupling
/// level with unit decay constant.
pub fn chi_hyper(mu: f64, rho: f64) -> Result<f64> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::Domain(format!(
            "chi_hyper: rho must be positive and finite, got {rho}"
        )));
    }
    let (k, _) = k_imag_value(mu, rho)?;
    Ok(rho.sqrt() * k)
}

/// Leading small-argument form of the strong-coupling profile,
///
/// `amplitude * rho^{1/2} csch(pi mu) sin(mu ln(rho/2) - Phi_mu)`,
///
/// with `Phi_mu = arg Gamma(1 + i mu)`, valid for `0 < rho <= 0.05` with a
/// relative correction of order `rho^2`. The `csch(pi mu)` factor stays
/// inside so one `amplitude` hook covers all orders: as `mu -> 0` the
/// product degenerates smoothly into the critical logarithmic profile
/// `(1/pi) rho^{1/2} (ln(rho/2) - psi(1))`.
pub fn chi_near_origin_hyper(mu: f64, rho: f64, amplitude: f64) -> Result<f64> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::Domain(format!(
            "chi_near_origin_hyper: mu must be positive and finite, got {mu}"
        )));
    }
    if !(rho > 0.0 && rho <= NEAR_ORIGIN_MAX_RHO) {
        return Err(Error::Domain(format!(
            "chi_near_origin_hyper: rho must lie in (0, {NEAR_ORIGIN_MAX_RHO}], got {rho}"
        )));
    }
    if !amplitude.is_finite() {
        return Err(Error::Domain(format!(
            "chi_near_origin_hyper: amplitude must be finite, got {amplitude}"
        )));
    }
    let phi = arg_gamma_1p_i(mu)?;
    let phase = mu * (0.5 * rho).ln() - phi;
    Ok(amplitude * rho.sqrt() * phase.sin() / (PI * mu).sinh())
}

/// One row of the predicted-versus-computed zero comparison.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZeroPair {
    /// Branch index `m` in the phase condition `mu ln(rho/2) - Phi = m pi`.
    pub index: i64,
    /// Zero predicted by the near-origin phase law,
    /// `rho_m = 2 exp((Phi + m pi) / mu)`.
    pub rho_predicted: f64,
    /// Zero of the full profile, bracketed between neighbours and polished
    /// by Brent's method.
    pub rho_computed: f64,
    /// `|rho_predicted - rho_computed| / rho_computed`.
    pub relative_gap: f64,
}

/// Locate every zero of `chi_hyper` inside `(rho_min, rho_max)` and pair it
/// with the phase-law prediction.
///
/// The window must sit inside the small-argument regime,
/// `1e-9 <= rho_min < rho_max <= 0.05`, where zeros are spaced by the factor
/// `e^{pi/mu}` and the law is accurate to `O(rho^2)`.
pub fn zero_table(mu: f64, rho_min: f64, rho_max: f64) -> Result<Vec<ZeroPair>> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::Domain(format!(
            "zero_table: mu must be positive and finite, got {mu}"
        )));
    }
    if !(rho_min >= 1e-9 && rho_min < rho_max && rho_max <= NEAR_ORIGIN_MAX_RHO) {
        return Err(Error::Domain(format!(
            "zero_table: need 1e-9 <= rho_min < rho_max <= {NEAR_ORIGIN_MAX_RHO}, \
             got [{rho_min}, {rho_max}]"
        )));
    }
    let phi = arg_gamma_1p_i(mu)?;
    let index_lo = (mu * (0.5 * rho_min).ln() - phi) / PI;
    let index_hi = (mu * (0.5 * rho_max).ln() - phi) / PI;
    // Half the log-spacing between consecutive zeros; brackets built from it
    // contain exactly one sign change each.
    let half_step = (0.5 * PI / mu).exp();

    let mut rows = Vec::new();
    for m in (index_lo.floor() as i64 + 1)..=(index_hi.ceil() as i64 - 1) {
        let rho_predicted = 2.0 * ((phi + m as f64 * PI) / mu).exp();
        if !(rho_predicted > rho_min && rho_predicted < rho_max) {
            continue;
        }
        let a = (rho_predicted / half_step).max(rho_min);
        let b = (rho_predicted * half_step).min(rho_max);
        let root = brent(|r| chi_hyper(mu, r).unwrap_or(f64::NAN), a, b, 0.0).map_err(|e| {
            Error::NonConvergence(format!(
                "zero_table: bracket around predicted zero {rho_predicted:.6e} failed: {e}"
            ))
        })?;
        let rho_computed = root.root;
        rows.push(ZeroPair {
            index: m,
            rho_predicted,
            rho_computed,
            relative_gap: (rho_predicted - rho_computed).abs() / rho_computed,
        });
    }
    Ok(rows)
}

/// Phase defect of `mu ln(kappa_n / kappa_m)` against the nearest multiple
/// of `pi`, for two distinct rungs of a unit-depth ladder.
///
/// On the exact ladder the defect vanishes to rounding, which is what makes
/// the radial overlap of distinct levels cancel; any detuning of a level
/// shows up linearly. The reference depth drops out of the ratio.
pub fn orthogonality_phase_check(mu: f64, n: i32, m: i32) -> Result<f64> {
    if n == m {
        return Err(Error::Domain(format!(
            "orthogonality_phase_check: rung indices must differ, got n = m = {n}"
        )));
    }
    let kappa_n = level_kappa(mu, n)?;
    let kappa_m = level_kappa(mu, m)?;
    Ok(phase_defect(mu, kappa_n, kappa_m))
}

/// Decay constant `kappa_n = |E_n|^{1/2} = e^{pi n / mu}` of a unit-depth
/// ladder, guarded like the ladder itself.
fn level_kappa(mu: f64, n: i32) -> Result<f64> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::Domain(format!(
            "orthogonality_phase_check: mu must be positive and finite, got {mu}"
        )));
    }
    let exponent = 2.0 * PI * f64::from(n) / mu;
    if exponent.abs() > MAX_LEVEL_EXPONENT {
        return Err(Error::OutOfRange(format!(
            "orthogonality_phase_check: rung n = {n} has exponent {exponent:.3e}, \
             outside [-{MAX_LEVEL_EXPONENT}, {MAX_LEVEL_EXPONENT}]"
        )));
    }
    Ok((0.5 * exponent).exp())
}

/// Distance of `mu ln(ka / kb)` from the nearest integer multiple of `pi`.
fn phase_defect(mu: f64, ka: f64, kb: f64) -> f64 {
    let phase = mu * (ka / kb).ln();
    (phase - PI * (phase / PI).round()).abs()
}

//! Coupling bookkeeping and regime classification.
//!
//! For the attractive inverse-square potential the dimensionless coupling
//! gamma and the angular momentum ell collapse into a single effective
//! strength Gamma = gamma - ell(ell+1). Everything downstream is governed
//! by the order nu = sqrt(1/4 - Gamma) (real for Gamma <= 1/4, purely
//! imaginary beyond), and by which side of the admissibility window
//! 0 <= nu < 1/2 the pair lands on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specialfn::{Order, OrderKind};

/// Where a coupling lands: a single bound state is admissible strictly
/// inside the window, the window edge nu = 0 is transitional, weaker
/// couplings bind nothing, and stronger ones produce an unbounded
/// spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    BoundAllowed,
    Transitional,
    NoBound,
    Hypercritical,
}

/// Probability-flux limit through a shrinking sphere around the origin
/// for the near-origin pair r^{1/2 +- nu}: the cross term carries flux
/// -4 pi (1/2 + nu) r^{1/2 - nu}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FluxLimit {
    Zero,
    Finite(f64),
    Divergent,
}

/// A validated coupling with all derived quantities populated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingParams {
    pub ell: u32,
    pub gamma: f64,
    pub gamma_eff: f64,
    pub order: Order,
    pub regime: Regime,
}

/// Builds the full parameter set for angular momentum `ell` and coupling
/// `gamma` > 0.
pub fn make_params(ell: u32, gamma: f64) -> Result<CouplingParams> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::Domain(format!(
            "make_params: coupling must be a finite positive number, got {gamma}"
        )));
    }
    let centrifugal = (ell as u64 * (ell as u64 + 1)) as f64;
    let gamma_eff = gamma - centrifugal;
    let order = if gamma_eff <= 0.25 {
        Order::real((0.25 - gamma_eff).sqrt())?
    } else {
        Order::imaginary((gamma_eff - 0.25).sqrt())?
    };
    let mut params = CouplingParams {
        ell,
        gamma,
        gamma_eff,
        order,
        regime: Regime::NoBound,
    };
    params.regime = classify_regime(&params);
    Ok(params)
}

/// Classifies by exact comparison against the window edges
/// ell(ell+1) < gamma <= (ell + 1/2)^2. Both edges are exactly
/// representable (the upper one is the integer ell(ell+1) plus 1/4), so
/// no tolerance is involved.
pub fn classify_regime(params: &CouplingParams) -> Regime {
    let lower = (params.ell as u64 * (params.ell as u64 + 1)) as f64;
    let upper = lower + 0.25;
    if params.gamma > upper {
        Regime::Hypercritical
    } else if params.gamma == upper {
        Regime::Transitional
    } else if params.gamma > lower {
        Regime::BoundAllowed
    } else {
        Regime::NoBound
    }
}

/// Limit of the probability flux through a sphere of radius r -> 0 when
/// the near-origin solution mixes r^{1/2+nu} with r^{1/2-nu}: the flux
/// scales as -4 pi (1/2 + nu) r^{1/2 - nu}.
pub fn flux_limit(nu: f64) -> FluxLimit {
    if nu < 0.5 {
        FluxLimit::Zero
    } else if nu == 0.5 {
        FluxLimit::Finite(-4.0 * std::f64::consts::PI)
    } else {
        FluxLimit::Divergent
    }
}

/// True when the coupling admits the single proper bound state, i.e. the
/// regime is inside the admissibility window (edge included).
pub fn bound_state_allowed(params: &CouplingParams) -> bool {
    matches!(params.regime, Regime::BoundAllowed | Regime::Transitional)
}

impl CouplingParams {
    /// The real order nu, if this coupling is at or below the critical
    /// strength.
    pub fn real_order(&self) -> Option<f64> {
        match self.order.kind() {
            OrderKind::Real => Some(self.order.value()),
            OrderKind::Imaginary => None,
        }
    }

    /// The imaginary-order magnitude mu, if hypercritical.
    pub fn imag_order(&self) -> Option<f64> {
        match self.order.kind() {
            OrderKind::Imaginary => Some(self.order.value()),
            OrderKind::Real => None,
        }
    }
}

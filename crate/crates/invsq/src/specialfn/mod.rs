//! Special functions with documented accuracy contracts.
//!
//! Everything the closed-form physics needs: the gamma family and the
//! Bessel functions J, Y, I, K of real order below one, plus K of purely
//! imaginary order. Each evaluator returns the value together with a
//! conservative absolute error bound. All routines are pure functions;
//! validated accuracy ranges are given on each operation.

mod bessel_ik;
mod bessel_jy;
mod bessel_kimag;
pub(crate) mod gamma;

pub use gamma::{arg_gamma_1p_i, digamma, gamma_fn, ln_gamma};

pub(crate) use bessel_ik::{i_with_derivative, k_with_derivative};
pub(crate) use bessel_jy::{j_with_derivative, y_with_derivative};
pub(crate) use bessel_kimag::k_imag_value;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bessel function order: either a real order nu >= 0 or a purely
/// imaginary order i mu with mu > 0.
///
/// Construction validates the numbers; the evaluators additionally
/// enforce their own accuracy ranges (real orders below 1, imaginary
/// orders up to 5).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Order {
    kind: OrderKind,
    value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Real,
    Imaginary,
}

impl Order {
    /// Real order nu >= 0.
    pub fn real(value: f64) -> Result<Order> {
        if !(value >= 0.0 && value.is_finite()) {
            return Err(Error::Domain(format!(
                "Order::real: need a finite nonnegative value, got {value}"
            )));
        }
        Ok(Order { kind: OrderKind::Real, value })
    }

    /// Imaginary order i mu with mu > 0.
    pub fn imaginary(value: f64) -> Result<Order> {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::Domain(format!(
                "Order::imaginary: need a finite positive value, got {value}"
            )));
        }
        Ok(Order { kind: OrderKind::Imaginary, value })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    fn real_value(&self, who: &str) -> Result<f64> {
        match self.kind {
            OrderKind::Real => Ok(self.value),
            OrderKind::Imaginary => Err(Error::Domain(format!(
                "{who}: needs a real order, got an imaginary one"
            ))),
        }
    }
}

/// A function value with a conservative absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    pub abs_error_estimate: f64,
}

/// Bessel J_nu(x) for real order 0 <= nu < 1, x >= 0.
/// Relative error at most 1e-9 for x in (1e-6, 50], measured against the
/// oscillation envelope near zeros of the function.
pub fn bessel_j(order: Order, x: f64) -> Result<EvalResult> {
    let nu = order.real_value("bessel_j")?;
    let (value, _, err) = j_with_derivative(nu, x)?;
    Ok(EvalResult { value, abs_error_estimate: err })
}

/// Bessel Y_nu(x) for real order 0 <= nu < 1, x > 0. Same accuracy
/// contract as [`bessel_j`].
pub fn bessel_y(order: Order, x: f64) -> Result<EvalResult> {
    let nu = order.real_value("bessel_y")?;
    let (value, _, err) = y_with_derivative(nu, x)?;
    Ok(EvalResult { value, abs_error_estimate: err })
}

/// Modified Bessel I_nu(x) for real order 0 <= nu < 1, 0 <= x <= 30.
/// Relative error at most 1e-12.
pub fn bessel_i(order: Order, x: f64) -> Result<EvalResult> {
    let nu = order.real_value("bessel_i")?;
    let (value, _, err) = i_with_derivative(nu, x)?;
    Ok(EvalResult { value, abs_error_estimate: err })
}

/// Modified Bessel K_nu(x) for real order 0 <= nu < 1, x > 0.
/// Relative error at most 1e-10 for x in (1e-6, 30].
pub fn bessel_k(order: Order, x: f64) -> Result<EvalResult> {
    let nu = order.real_value("bessel_k")?;
    let (value, _, err) = k_with_derivative(nu, x)?;
    Ok(EvalResult { value, abs_error_estimate: err })
}

/// Real-valued K_{i mu}(x) for imaginary order, 0 < mu <= 5, x > 0.
/// Relative error at most 1e-8 for x in (1e-4, 20] away from the zeros.
pub fn bessel_k_imag(order: Order, x: f64) -> Result<EvalResult> {
    let mu = match order.kind {
        OrderKind::Imaginary => order.value,
        OrderKind::Real => {
            return Err(Error::Domain(
                "bessel_k_imag: needs an imaginary order, got a real one".into(),
            ))
        }
    };
    let (value, err) = k_imag_value(mu, x)?;
    Ok(EvalResult { value, abs_error_estimate: err })
}

//! Brute-force numerical oracles.
//!
//! Everything in this module is deliberately generic: adaptive quadrature,
//! bracketed root finding, Richardson extrapolation, a finite-difference
//! residual for the radial equation, and a Numerov shooting solver. None of
//! it knows any closed form from the rest of the crate, which is the point:
//! the analytic modules are checked against these routines, never the other
//! way around.

mod extrapolate;
mod numerov;
mod quad;
mod residual;
mod root;

pub use extrapolate::richardson;
pub use numerov::{numerov_bound_state, NumerovSolution};
pub use quad::{integrate, QuadResult};
pub use residual::{ode_residual, ode_residual_with_step};
pub use root::{brent, RootResult};

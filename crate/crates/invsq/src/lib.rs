//! Numerical toolkit for a quantum particle in an attractive inverse-square
//! potential.
//!
//! The radial Schrödinger equation with `V(r) = -lambda / r^2` reduces, in
//! units where `hbar = 2m = 1`, to
//!
//! ```text
//! chi''(rho) + (-1 + Gamma / rho^2) chi(rho) = 0,    rho = kappa r,
//! ```
//!
//! with a single effective coupling `Gamma = gamma - l(l+1)`. The physics
//! splits into regimes by the value of `Gamma` relative to 1/4:
//!
//! * `Gamma < 1/4`: no bound states from the pure power-law tail; a finite
//!   inner well of depth `gamma'` can still bind once `gamma'` crosses a
//!   threshold (module [`wellmatch`]).
//! * `Gamma = 1/4`: transitional point.
//! * `Gamma > 1/4`: the spectrum is an unbounded geometric ladder and the
//!   Hamiltonian needs extra input at the origin (module [`hypercritical`]).
//!
//! The crate provides closed-form evaluations for each regime together with
//! independent brute-force checks (adaptive quadrature, finite differences,
//! and a Numerov integrator in [`oracle`]) so that every analytic claim can
//! be verified numerically at stated tolerances. The [`verify`] module runs
//! the whole battery and reports one outcome per check.

pub mod boundstate;
pub mod cli;
pub mod continuum;
pub mod coupling;
pub mod error;
pub mod hypercritical;
pub mod oracle;
pub mod specialfn;
pub mod verify;
pub mod wellmatch;

pub use error::{Error, Result};

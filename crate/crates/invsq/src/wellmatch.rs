//! Matching an interior spherical well to the inverse-square exterior.
//!
//! Regularizing the potential with a flat well of depth lambda'/r0^2
//! inside r0 turns the scale-free exterior problem into a well-posed one.
//! Continuity of the logarithmic derivative at r0 reads, in x = kappa r0,
//!
//!   1/2 + x K'_nu(x)/K_nu(x) = sqrt(gamma' - x^2) cot sqrt(gamma' - x^2),
//!
//! and in the r0 -> 0 limit collapses to sqrt(gamma') cot sqrt(gamma') =
//! 1/2 - nu, independent of the energy. That limit maps every admissible
//! exterior coupling gamma to a unique interior strength gamma', rising
//! from 1.35853 at nu = 0 to (pi/2)^2 = 2.46740 at nu = 1/2. This module
//! computes the map, the finite-r0 roots, and polynomial fits of the
//! curve in (1/2 - nu).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::brent;
use crate::specialfn::k_with_derivative;

const PI: f64 = std::f64::consts::PI;

/// Bracket for sqrt(gamma') containing the matching level for every
/// nu in [0, 1/2]: the level 1/2 - nu = 1/2 is crossed just above 1.16,
/// the level 0 just below pi/2 (the upper edge sits slightly past pi/2 so
/// the endpoint root is interior to the bracket).
const SQRT_GP_LO: f64 = 1.16;
const SQRT_GP_HI: f64 = 1.5709;

/// One solved point of the gamma -> gamma' map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WellMatchResult {
    pub gamma: f64,
    pub nu: f64,
    pub gamma_prime: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Least-squares polynomial fit of gamma'(1/2 - nu), constant-first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub degree: usize,
    pub coefficients: Vec<f64>,
    pub max_abs_deviation: f64,
}

/// One row of the interior-strength curve table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Fig1Row {
    pub half_minus_nu: f64,
    pub gamma: f64,
    pub gamma_prime: f64,
    pub gamma_prime_linear_fit: f64,
}

/// Interior logarithmic-derivative level sqrt(Lambda) cot sqrt(Lambda).
pub fn matching_rhs(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain(format!(
            "matching_rhs: Lambda must be positive and finite, got {lambda}"
        )));
    }
    let u = lambda.sqrt();
    let nearest = (u / PI).round();
    if nearest >= 1.0 && (u - nearest * PI).abs() < 1e-9 {
        return Err(Error::Pole(format!(
            "matching_rhs: cot diverges at sqrt(Lambda) = {nearest} pi"
        )));
    }
    Ok(u * u.cos() / u.sin())
}

/// Solves sqrt(gamma') cot sqrt(gamma') = 1/2 - nu, the r0 -> 0 limit of
/// the matching condition, for nu in [0, 1/2].
pub fn gamma_prime_limit(nu: f64) -> Result<WellMatchResult> {
    if !(0.0..=0.5).contains(&nu) {
        return Err(Error::Domain(format!(
            "gamma_prime_limit: order must lie in [0, 1/2], got {nu}"
        )));
    }
    let level = 0.5 - nu;
    let root = brent(
        |u| u * u.cos() / u.sin() - level,
        SQRT_GP_LO,
        SQRT_GP_HI,
        1e-13,
    )?;
    let u = root.root;
    Ok(WellMatchResult {
        gamma: 0.25 - nu * nu,
        nu,
        gamma_prime: u * u,
        residual: (u * u.cos() / u.sin() - level).abs(),
        iterations: root.iterations,
    })
}

/// Exterior level 1/2 + x K'_nu(x)/K_nu(x) of the exact matching
/// condition; tends to 1/2 - nu as x -> 0.
pub fn exterior_level(nu: f64, x: f64) -> Result<f64> {
    let (k, kp, _) = k_with_derivative(nu, x)?;
    Ok(0.5 + x * kp / k)
}

/// Solves the exact finite-r0 matching condition for x = kappa r0 given
/// the exterior gamma (bound-allowed at ell = 0) and interior gamma'.
/// Returns the root; the residual of the condition there is at most tol.
/// The root exists only for gamma' above the r0 -> 0 limit value and
/// shrinks to zero as gamma' approaches it from above.
pub fn finite_r0_match(gamma: f64, gamma_prime: f64, tol: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma < 0.25) {
        return Err(Error::Domain(format!(
            "finite_r0_match: gamma must lie in (0, 1/4) for an ell = 0 bound state, got {gamma}"
        )));
    }
    if !(gamma_prime > 0.0 && gamma_prime < PI * PI) {
        return Err(Error::Domain(format!(
            "finite_r0_match: gamma' must lie in (0, pi^2), got {gamma_prime}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "finite_r0_match: tol must be positive, got {tol}"
        )));
    }
    let nu = (0.25 - gamma).sqrt();
    let mismatch = |x: f64| {
        let lhs = exterior_level(nu, x).expect("K is finite on the bracket");
        let lambda = gamma_prime - x * x;
        lhs - lambda.sqrt() / lambda.sqrt().tan()
    };
    // Upper edge keeps Lambda > 0; at x -> 0 the mismatch tends to
    // (1/2 - nu) - sqrt(gamma') cot sqrt(gamma'), positive iff gamma'
    // exceeds the limit value. Roots close to the limit sit many decades
    // below the bracket top and the mismatch varies like x^{2 nu}, so the
    // search runs in log x where it is well scaled.
    let hi = gamma_prime.sqrt() * (1.0 - 1e-9);
    let root = brent(|y: f64| mismatch(y.exp()), (1e-30_f64).ln(), hi.ln(), tol)?;
    if root.residual.abs() > tol {
        return Err(Error::NonConvergence(format!(
            "finite_r0_match: residual {} above tol {tol}",
            root.residual
        )));
    }
    Ok(root.root.exp())
}

/// Least-squares fit of gamma' against t = 1/2 - nu on a uniform grid of
/// `grid_size` points over [0, 1/2]; degree 1 or 2, constant-first.
pub fn fit_curve(degree: usize, grid_size: usize) -> Result<FitResult> {
    if !(degree == 1 || degree == 2) {
        return Err(Error::Domain(format!(
            "fit_curve: degree must be 1 or 2, got {degree}"
        )));
    }
    if grid_size < 20 {
        return Err(Error::Domain(format!(
            "fit_curve: grid must have at least 20 points, got {grid_size}"
        )));
    }
    let mut ts = Vec::with_capacity(grid_size);
    let mut ys = Vec::with_capacity(grid_size);
    for i in 0..grid_size {
        let t = 0.5 * i as f64 / (grid_size - 1) as f64;
        ts.push(t);
        ys.push(gamma_prime_limit(0.5 - t)?.gamma_prime);
    }
    let coefficients = polyfit(&ts, &ys, degree)?;
    let max_abs_deviation = ts
        .iter()
        .zip(&ys)
        .map(|(&t, &y)| (poly_eval(&coefficients, t) - y).abs())
        .fold(0.0, f64::max);
    Ok(FitResult {
        degree,
        coefficients,
        max_abs_deviation,
    })
}

/// The curve table: `n_points` rows uniform in t = 1/2 - nu, ascending,
/// with the degree-1 fit column evaluated from the default 101-point fit.
pub fn fig1_table(n_points: usize) -> Result<Vec<Fig1Row>> {
    if n_points < 2 {
        return Err(Error::Domain(format!(
            "fig1_table: need at least 2 rows, got {n_points}"
        )));
    }
    let fit = fit_curve(1, 101)?;
    let mut rows = Vec::with_capacity(n_points);
    for i in 0..n_points {
        let t = 0.5 * i as f64 / (n_points - 1) as f64;
        let nu = 0.5 - t;
        let solved = gamma_prime_limit(nu)?;
        rows.push(Fig1Row {
            half_minus_nu: t,
            gamma: solved.gamma,
            gamma_prime: solved.gamma_prime,
            gamma_prime_linear_fit: poly_eval(&fit.coefficients, t),
        });
    }
    Ok(rows)
}

fn poly_eval(coefficients: &[f64], t: f64) -> f64 {
    coefficients.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

/// Normal-equations least squares for the low degrees used here; the
/// design matrix is tiny and far from singular on these grids.
fn polyfit(ts: &[f64], ys: &[f64], degree: usize) -> Result<Vec<f64>> {
    let n = degree + 1;
    let mut ata = vec![vec![0.0; n]; n];
    let mut atb = vec![0.0; n];
    for (&t, &y) in ts.iter().zip(ys) {
        let mut powers = vec![1.0; 2 * n - 1];
        for k in 1..2 * n - 1 {
            powers[k] = powers[k - 1] * t;
        }
        for r in 0..n {
            for c in 0..n {
                ata[r][c] += powers[r + c];
            }
            atb[r] += y * powers[r];
        }
    }
    solve_dense(&mut ata, &mut atb)?;
    Ok(atb)
}

fn solve_dense(a: &mut [Vec<f64>], b: &mut [f64]) -> Result<()> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col].abs() < 1e-300 {
            return Err(Error::NonConvergence(
                "polyfit: singular normal equations".into(),
            ));
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for c in col..n {
                a[row][c] -= f * a[col][c];
            }
            b[row] -= f * b[col];
        }
    }
    for col in (0..n).rev() {
        let mut s = b[col];
        for c in col + 1..n {
            s -= a[col][c] * b[c];
        }
        b[col] = s / a[col][col];
    }
    Ok(())
}

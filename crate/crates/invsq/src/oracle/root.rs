//! Bracketed root finding with Brent's method.

use crate::error::{Error, Result};

/// Result of a successful root search.
#[derive(Debug, Clone, Copy)]
pub struct RootResult {
    /// Location of the root.
    pub root: f64,
    /// Function value at `root`.
    pub residual: f64,
    /// Iterations consumed.
    pub iterations: usize,
}

const ITMAX: usize = 200;

/// Find a root of `f` in `[a, b]` by Brent's method.
///
/// The bracket must satisfy `f(a) * f(b) <= 0`. Iteration stops when the
/// bracketing interval shrinks to machine resolution around the root or
/// when `|f| <= ftol`. Pass `ftol = 0.0` to always run to machine
/// precision in `x`.
pub fn brent<F>(f: F, a: f64, b: f64, ftol: f64) -> Result<RootResult>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa.is_nan() || fb.is_nan() {
        return Err(Error::Domain(format!(
            "brent: f is NaN at a bracket end ({a:.6e}, {b:.6e})"
        )));
    }
    if fa == 0.0 {
        return Ok(RootResult { root: a, residual: 0.0, iterations: 0 });
    }
    if fb == 0.0 {
        return Ok(RootResult { root: b, residual: 0.0, iterations: 0 });
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoRoot(format!(
            "brent: no sign change on [{a:.6e}, {b:.6e}] \
             (f(a) = {fa:.3e}, f(b) = {fb:.3e})"
        )));
    }

    let mut c = b;
    let mut fc = fb;
    let (mut d, mut e) = (b - a, b - a);

    for iter in 1..=ITMAX {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * f64::EPSILON;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 || fb.abs() <= ftol {
            return Ok(RootResult { root: b, residual: fb, iterations: iter });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Inverse quadratic interpolation, falling back to secant.
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1.copysign(xm);
        }
        fb = f(b);
        if fb.is_nan() {
            return Err(Error::Domain(format!("brent: f is NaN at x = {b:.6e}")));
        }
    }

    Err(Error::NonConvergence(format!(
        "brent: no convergence in {ITMAX} iterations, last x = {b:.17e}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn cubic_root() {
        let r = brent(|x| x * x * x - 2.0, 0.0, 2.0, 0.0).unwrap();
        assert_relative_eq!(r.root, 2.0f64.powf(1.0 / 3.0), max_relative = 1e-15);
    }

    #[test]
    fn transcendental_root() {
        // cos x = x near 0.739
        let r = brent(|x| x.cos() - x, 0.0, 1.0, 0.0).unwrap();
        assert_relative_eq!(r.root, 0.739_085_133_215_160_6, max_relative = 1e-14);
        assert!(r.residual.abs() < 1e-15);
    }

    #[test]
    fn root_at_bracket_end() {
        let r = brent(|x| x - 1.0, 1.0, 2.0, 0.0).unwrap();
        assert_eq!(r.root, 1.0);
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn steep_root_near_zero() {
        // Scale mimic of the shallow-level matching problem: root at 1e-8.
        let r = brent(|x| (x / 1e-8).ln(), 1e-16, 1.0, 0.0).unwrap();
        assert_relative_eq!(r.root, 1e-8, max_relative = 1e-9);
    }

    #[test]
    fn no_sign_change_is_error() {
        let err = brent(|x| x * x + 1.0, -1.0, 1.0, 0.0).unwrap_err();
        assert_eq!(err.kind(), "no_root");
    }

    #[test]
    fn ftol_early_exit() {
        let loose = brent(|x| x.exp() - 2.0, 0.0, 1.0, 1e-3).unwrap();
        let tight = brent(|x| x.exp() - 2.0, 0.0, 1.0, 0.0).unwrap();
        assert!(loose.iterations <= tight.iterations);
        assert!(loose.residual.abs() <= 1e-3);
        assert_relative_eq!(tight.root, std::f64::consts::LN_2, max_relative = 1e-14);
    }
}

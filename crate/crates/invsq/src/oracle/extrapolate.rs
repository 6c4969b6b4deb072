//! Richardson extrapolation of a sequence of estimates to zero step size.

use crate::error::{Error, Result};

/// Extrapolate samples `(h_i, y_i)` to `h = 0` with Neville's algorithm.
///
/// Treats `y` as a smooth function of `h` and evaluates the interpolating
/// polynomial at zero. The steps must be distinct; order is arbitrary.
/// With the usual geometric step sequence this upgrades an O(h) limit
/// estimate to O(h^n).
pub fn richardson(samples: &[(f64, f64)]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::Domain("richardson: no samples".into()));
    }
    let n = samples.len();
    let h: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let mut p: Vec<f64> = samples.iter().map(|s| s.1).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if h[i] == h[j] {
                return Err(Error::Domain(format!(
                    "richardson: duplicate step size {:.6e}",
                    h[i]
                )));
            }
        }
    }
    // Neville tableau evaluated at h = 0, updated in place.
    for level in 1..n {
        for i in 0..(n - level) {
            let (hi, hj) = (h[i], h[i + level]);
            p[i] = (hi * p[i + 1] - hj * p[i]) / (hi - hj);
        }
    }
    Ok(p[0])
}

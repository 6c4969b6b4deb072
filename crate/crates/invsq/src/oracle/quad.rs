//! Globally adaptive quadrature built on a 15-point Gauss-Kronrod rule.
//!
//! The strategy is the classic one: keep all subintervals in a priority
//! queue ordered by their local error estimate, always bisect the worst
//! one, stop when the summed estimate drops below the requested absolute
//! tolerance.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    /// Estimate of the integral.
    pub value: f64,
    /// Estimated absolute error of `value`.
    pub abs_error: f64,
    /// Number of interval bisections performed.
    pub subdivisions: usize,
}

const MAX_SUBDIVISIONS: usize = 4000;

/// Integrate `f` over `[a, b]` to absolute tolerance `abs_tol`.
///
/// Fails with [`Error::NonConvergence`] if the error estimate is still
/// above `abs_tol` after the subdivision budget is spent, and with
/// [`Error::Domain`] if the integrand produces a NaN.
pub fn integrate<F>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite()) || !(abs_tol > 0.0) {
        return Err(Error::Domain(format!(
            "integrate: bad interval [{a}, {b}] or tolerance {abs_tol}"
        )));
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            abs_error: 0.0,
            subdivisions: 0,
        });
    }

    let mut heap = BinaryHeap::new();
    let first = Cell::eval(&f, a, b)?;
    let mut total_value = first.value;
    let mut total_error = first.error;
    heap.push(first);

    let mut subdivisions = 0;
    while total_error > abs_tol {
        if subdivisions >= MAX_SUBDIVISIONS {
            return Err(Error::NonConvergence(format!(
                "integrate: error {total_error:.3e} > tol {abs_tol:.3e} \
                 after {MAX_SUBDIVISIONS} subdivisions"
            )));
        }
        let worst = heap.pop().expect("heap holds at least one cell");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval is at machine resolution; its estimate cannot improve.
            return Err(Error::NonConvergence(format!(
                "integrate: interval [{:.17e}, {:.17e}] no longer splittable \
                 with error {:.3e}",
                worst.a, worst.b, worst.error
            )));
        }
        let left = Cell::eval(&f, worst.a, mid)?;
        let right = Cell::eval(&f, mid, worst.b)?;
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
    }

    Ok(QuadResult {
        value: total_value,
        abs_error: total_error,
        subdivisions,
    })
}

/// One subinterval with its rule value and error estimate.
struct Cell {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl Cell {
    fn eval<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Cell> {
        let (value, error) = qk15(f, a, b);
        if value.is_nan() || error.is_nan() {
            return Err(Error::Domain(format!(
                "integrate: integrand returned NaN on [{a:.6e}, {b:.6e}]"
            )));
        }
        Ok(Cell { a, b, value, error })
    }
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        // Largest error first; errors are finite by construction.
        self.error.total_cmp(&other.error)
    }
}

// Kronrod nodes (positive half), embedded 7-point Gauss weights, and
// 15-point Kronrod weights.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Apply the 15-point Kronrod rule with embedded 7-point Gauss rule on
/// `[a, b]`. Returns `(integral, error_estimate)`.
fn qk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let n = XGK.len();
    let center = 0.5 * (a + b);
    let half_len = 0.5 * (b - a);
    let abs_half_len = half_len.abs();
    let f_center = f(center);

    let mut fv1 = [0.0; 8];
    let mut fv2 = [0.0; 8];
    // The embedded 7-point Gauss rule uses the odd Kronrod nodes plus the
    // center point.
    let mut res_gauss = f_center * WG[n / 2 - 1];
    let mut res_kronrod = f_center * WGK[n - 1];
    let mut res_abs = res_kronrod.abs();

    // Odd Kronrod nodes coincide with the Gauss nodes.
    for (j, gw) in WG.iter().enumerate().take((n - 1) / 2) {
        let jtw = j * 2 + 1;
        let abscissa = half_len * XGK[jtw];
        let fval1 = f(center - abscissa);
        let fval2 = f(center + abscissa);
        let fsum = fval1 + fval2;
        fv1[jtw] = fval1;
        fv2[jtw] = fval2;
        res_gauss += *gw * fsum;
        res_kronrod += WGK[jtw] * fsum;
        res_abs += WGK[jtw] * (fval1.abs() + fval2.abs());
    }
    for j in 0..(n / 2) {
        let jtwm1 = j * 2;
        let abscissa = half_len * XGK[jtwm1];
        let fval1 = f(center - abscissa);
        let fval2 = f(center + abscissa);
        fv1[jtwm1] = fval1;
        fv2[jtwm1] = fval2;
        res_kronrod += WGK[jtwm1] * (fval1 + fval2);
        res_abs += WGK[jtwm1] * (fval1.abs() + fval2.abs());
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[n - 1] * (f_center - mean).abs();
    for j in 0..(n - 1) {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let err = (res_kronrod - res_gauss) * half_len;
    let value = res_kronrod * half_len;
    res_abs *= abs_half_len;
    res_asc *= abs_half_len;
    (value, rescale_error(err, res_abs, res_asc))
}

/// Turn the raw Gauss/Kronrod difference into a safe error estimate.
fn rescale_error(err: f64, result_abs: f64, result_asc: f64) -> f64 {
    let mut err = err.abs();
    if result_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / result_asc).powf(1.5);
        err = if scale < 1.0 { result_asc * scale } else { result_asc };
    }
    if result_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * result_abs;
        if min_err > err {
            err = min_err;
        }
    }
    err
}

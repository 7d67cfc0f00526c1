//! Riemann sum with the algebraic factor expanded about each center.
//!
//! Substituting u = t^2 puts the integral in the form
//! `(1/2) int_0^1 u^{m-1/2} e^{-zu} du`.  On each subinterval the factor
//! `u^{m-1/2}` is expanded to second order about the center u_l while the
//! exponential is integrated exactly, which leaves brackets of the form
//! `A P_j(z Delta) - B P_j(-z Delta)` with `A = e^{-z Delta}`,
//! `B = e^{z Delta}` and `P_j` the degree-j partial sum of the
//! exponential series:
//!
//! ```text
//! F_m(z) ~ -1/(2z) sum_l e^{-z u_l} u_l^{m-1/2}
//!            sum_{j<=2} c_j / (z u_l)^j [A P_j(z Delta) - B P_j(-z Delta)]
//! ```
//!
//! with `c_j = (m-1/2)(m-3/2)...(m-1/2-j+1)`.  The subinterval nearest
//! u = 0 carries most of the error because the expansion of `u^{m-1/2}`
//! about u_1 = Delta barely converges there; the patched variant swaps
//! that term for the directly integrated series
//! `(2 Delta)^{m+1/2}/2 sum_n (-2 z Delta)^n / ((m+1/2+n) n!)`.
//!
//! That series, run to convergence, also prices the first cell exactly,
//! so both error estimates charge the first cell by its measured defect
//! rather than by a higher-order term the expansion does not control.

use num_complex::Complex64;

use super::SubintervalConfig;
use crate::{Error, Result, SeriesResult};

/// Degree-j partial sum of the exponential series at x.
fn exp_partial(j: u32, x: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for i in 1..=j {
        term = term * x / i as f64;
        sum += term;
    }
    sum
}

fn bracket(j: u32, a: Complex64, b: Complex64, x: Complex64) -> Complex64 {
    a * exp_partial(j, x) - b * exp_partial(j, -x)
}

struct Sum {
    value: Complex64,
    /// The l = 1 contribution, also part of `value`.
    first_cell: Complex64,
    abs: f64,
    /// Third-order terms summed over l >= 2 only.
    third_tail: f64,
}

fn second_order_sum(m: u32, z: Complex64, cfg: &SubintervalConfig) -> Sum {
    let mf = m as f64 - 0.5;
    let c1 = mf;
    let c2 = mf * (mf - 1.0);
    let c3 = c2 * (mf - 2.0);
    let x = z * cfg.delta;
    let a = (-x).exp();
    let b = x.exp();
    let b0 = bracket(0, a, b, x);
    let b1 = bracket(1, a, b, x);
    let b2 = bracket(2, a, b, x);
    let b3 = bracket(3, a, b, x);
    let scale = -(2.0 * z).finv();
    let mut value = Complex64::new(0.0, 0.0);
    let mut first_cell = Complex64::new(0.0, 0.0);
    let mut abs = 0.0f64;
    let mut third_tail = 0.0f64;
    for (l, &u) in cfg.centers.iter().enumerate() {
        let outer = scale * (-z * u).exp() * u.powf(mf);
        let r = (z * u).finv();
        let cell = outer * (b0 + r * (c1 * b1 + r * (c2 * b2)));
        value += cell;
        abs += outer.norm()
            * (b0.norm() + r.norm() * (c1.abs() * b1.norm() + r.norm() * c2.abs() * b2.norm()));
        if l == 0 {
            first_cell = cell;
        } else {
            third_tail += (outer * r.powu(3) * (c3 * b3)).norm();
        }
    }
    Sum { value, first_cell, abs, third_tail }
}

/// The integral over the first cell, `(1/2) int_0^{2 Delta} u^{m-1/2}
/// e^{-zu} du`, by its power series.  Returns the partial sum after
/// `n_keep` extra terms, the converged sum, and the magnitude total of
/// the kept terms.
fn first_cell_series(m: u32, z: Complex64, width: f64, n_keep: u32) -> (Complex64, Complex64, f64) {
    let mf = m as f64 + 0.5;
    let head = 0.5 * width.powf(mf);
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(1.0 / mf, 0.0);
    let mut kept = sum;
    let mut kept_abs = 1.0 / mf;
    for n in 1..=48u32 {
        term = term * (-z * width) / n as f64;
        let slot = term / (mf + n as f64);
        sum += slot;
        if n <= n_keep {
            kept = sum;
            kept_abs += slot.norm();
        }
        if n > n_keep && slot.norm() <= f64::EPSILON * sum.norm() {
            break;
        }
    }
    (head * kept, head * sum, head.abs() * kept_abs)
}

/// Second-order sum over all N subintervals.
pub fn algebraic_taylor(m: u32, z: Complex64, cfg: &SubintervalConfig) -> Result<SeriesResult> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("the expansion divides by z; take the z=0 limit upstream"));
    }
    let s = second_order_sum(m, z, cfg);
    let (_, exact_first, _) = first_cell_series(m, z, 2.0 * cfg.delta, 0);
    let denom = s.value.norm().max(f64::MIN_POSITIVE);
    let est = ((s.first_cell - exact_first).norm() + 1.5 * s.third_tail) / denom
        + f64::EPSILON * s.abs / denom;
    Ok(SeriesResult::new(s.value, 3 * cfg.n, est))
}

/// Same sum with the l = 1 term replaced by the series integral of the
/// first subinterval truncated after n_patch terms.
pub fn algebraic_taylor_patched(
    m: u32,
    z: Complex64,
    cfg: &SubintervalConfig,
    n_patch: u32,
) -> Result<SeriesResult> {
    assert!(n_patch <= 8, "the patch series is meant to stay short");
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("the expansion divides by z; take the z=0 limit upstream"));
    }
    let s = second_order_sum(m, z, cfg);
    let (patch, converged, patch_abs) = first_cell_series(m, z, 2.0 * cfg.delta, n_patch);
    let value = s.value - s.first_cell + patch;
    let denom = value.norm().max(f64::MIN_POSITIVE);
    let est = ((patch - converged).norm() + 1.5 * s.third_tail) / denom
        + f64::EPSILON * (s.abs + patch_abs) / denom;
    Ok(SeriesResult::new(value, 3 * (cfg.n - 1) + n_patch as usize + 1, est))
}

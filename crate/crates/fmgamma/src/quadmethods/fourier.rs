//! Cosine expansion of the algebraic factor.
//!
//! With u = t^2 the task is `(1/2) int_0^1 u^{m-1/2} e^{-zu} du`.  The
//! factor u^{m-1/2} is continued to an even, 4-periodic carrier
//!
//! ```text
//! f(u) = u^{m-1/2}            on [0,1]
//!      = 2 - (2-u)^{m-1/2}    on [1,2]
//! ```
//!
//! whose cosine coefficients are picked up by a discrete transform on N
//! equidistant samples.  Since f - 1 is antisymmetric about u = 1, the
//! even-index coefficients vanish and c_0 = 1; only the odd ones are
//! stored.  Each retained term integrates against the exponential in
//! closed form, so the evaluator is a short rational-plus-exponential
//! sum with no quadrature error beyond the fit of the carrier itself.

use num_complex::Complex64;

use crate::SeriesResult;

/// Odd cosine coefficients of the carrier for one index m, plus the
/// measured quality of the fit they achieve.
#[derive(Clone, Debug)]
pub struct FourierTable {
    pub m: u32,
    /// Sample count of the transform; the evaluator keeps l < n/2.
    pub n: usize,
    /// Coefficients c_1, c_3, c_5, ... in that order.
    pub c_odd: Vec<f64>,
    /// Largest deviation of the truncated expansion from u^{m-1/2} seen
    /// on a dense grid over [0,1].  For m >= 1 this includes u = 0,
    /// where the expansion tends to 1 + sum c_l instead of 0; for m = 0
    /// the target itself diverges there and the grid starts just above.
    pub fit_error: f64,
}

fn carrier(m: u32, u: f64) -> f64 {
    let e = m as f64 - 0.5;
    if u <= 1.0 { u.powf(e) } else { 2.0 - (2.0 - u).powf(e) }
}

fn coefficient(m: u32, n: usize, j: usize) -> f64 {
    let mut acc = if j % 2 == 0 { 1.0 } else { -1.0 };
    for k in 1..n / 2 {
        let angle = 2.0 * std::f64::consts::PI * (j * k % n) as f64 / n as f64;
        acc += carrier(m, 4.0 * k as f64 / n as f64) * angle.cos();
    }
    4.0 * acc / n as f64
}

/// Truncated reconstruction `1 + sum c_l cos(l pi u / 2)`.
fn reconstruct(c_odd: &[f64], u: f64) -> f64 {
    let mut acc = 1.0;
    for (i, &c) in c_odd.iter().enumerate() {
        let l = (2 * i + 1) as f64;
        acc += c * (l * std::f64::consts::FRAC_PI_2 * u).cos();
    }
    acc
}

/// Builds the coefficient table for index m from N carrier samples.
pub fn fourier_table(m: u32, n: usize) -> FourierTable {
    assert!(n.is_power_of_two() && (64..=4096).contains(&n), "sample count out of range");
    let c_odd: Vec<f64> = (1..n / 2).step_by(2).map(|j| coefficient(m, n, j)).collect();
    let grid = 4096usize;
    let mut fit_error = 0.0f64;
    let start = if m == 0 { 1 } else { 0 };
    for g in start..=grid {
        let u = g as f64 / grid as f64;
        let target = if u == 0.0 { 0.0 } else { u.powf(m as f64 - 0.5) };
        fit_error = fit_error.max((reconstruct(&c_odd, u) - target).abs());
    }
    FourierTable { m, n, c_odd, fit_error }
}

/// Termwise integral of the expansion against the kernel.
///
/// Each cosine integrates to a rational expression whose denominator
/// `(2z)^2 + (l pi)^2` never vanishes off the imaginary axis, and on it
/// only at the isolated points 2|z| = l pi; the constant term carries
/// the whole z = 0 limit, which is returned exactly.
pub fn fourier_eval(m: u32, z: Complex64, table: &FourierTable) -> SeriesResult {
    assert_eq!(table.m, m, "table was built for a different index");
    if z == Complex64::new(0.0, 0.0) {
        return SeriesResult::new(
            Complex64::new(1.0 / (2.0 * m as f64 + 1.0), 0.0),
            1,
            0.0,
        );
    }
    let emz = (-z).exp();
    let mut acc = (Complex64::new(1.0, 0.0) - emz) / z;
    let mut abs = acc.norm();
    let two_z_sq = (2.0 * z) * (2.0 * z);
    for (i, &c) in table.c_odd.iter().enumerate() {
        let l = 2 * i + 1;
        let lpi = l as f64 * std::f64::consts::PI;
        let sign = if (l / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let term = 2.0 * c * (2.0 * z + sign * lpi * emz) / (two_z_sq + lpi * lpi);
        acc += term;
        abs += term.norm();
    }
    let value = 0.5 * acc;
    let denom = value.norm().max(f64::MIN_POSITIVE);
    let envelope = (-z.re).exp().max(1.0);
    let est = table.fit_error * envelope / (2.0 * denom) + f64::EPSILON * abs / (2.0 * denom);
    SeriesResult::new(value, table.c_odd.len() + 1, est)
}

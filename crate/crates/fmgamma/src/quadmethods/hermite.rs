//! Local Taylor expansion of the kernel, m = 0.
//!
//! The derivatives of `e^{-zt^2}` are Hermite polynomials times the
//! kernel, so integrating the Taylor series of the kernel over each
//! subinterval termwise gives
//!
//! ```text
//! F_0(z) ~ 2 sum_l e^{-z t_l^2}
//!            sum_{n even} Delta^{n+1}/(n+1)!  z^{n/2} H_n(sqrt(z) t_l)
//! ```
//!
//! Odd derivatives integrate to zero over the symmetric subinterval.
//! Since only even indexes appear, `H_n(sqrt(z) t)` is a polynomial in
//! the single combined variable `z t^2` and no square root of `z` is ever
//! taken.

use num_complex::Complex64;

use super::SubintervalConfig;
use crate::SeriesResult;

/// `H_n(sqrt(z) t)` for even `n`, evaluated as a polynomial in
/// `zt2 = z t^2` by Horner's scheme.  The leading coefficient is `2^n`;
/// the caller supplies the remaining `z^{n/2}` scale of the derivative.
pub fn even_scaled_hermite(n: u32, zt2: Complex64) -> Complex64 {
    assert!(n % 2 == 0, "odd orders integrate away");
    assert!(n <= 32, "orders above 32 are not supported");
    hermite_even_poly(n, zt2)
}

pub(super) fn hermite_even_poly(n: u32, zt2: Complex64) -> Complex64 {
    let p = (n / 2) as i32;
    // c_q for y^q, downward from c_p = 2^n:
    // c_{q-1} = -c_q (2q)(2q-1) / (4 (p-q+1))
    let mut coef = (2.0f64).powi(n as i32);
    let mut v = Complex64::new(coef, 0.0);
    for q in (1..=p).rev() {
        coef *= -(2.0 * q as f64) * (2.0 * q as f64 - 1.0) / (4.0 * (p - q + 1) as f64);
        v = v * zt2 + coef;
    }
    v
}

/// Riemann sum of local Taylor expansions, even terms up to `n_max`.
pub fn hermite_local_taylor(z: Complex64, cfg: &SubintervalConfig, n_max: u32) -> SeriesResult {
    assert!(n_max % 2 == 0 && n_max <= 32, "n_max must be even and at most 32");
    let d2 = cfg.delta * cfg.delta;
    let mut total = Complex64::new(0.0, 0.0);
    let mut abs_acc = 0.0f64;
    let mut next_acc = 0.0f64;
    for &t_l in &cfg.centers {
        let y = z * (t_l * t_l);
        let e = (-y).exp();
        let mut dpow = cfg.delta; // Delta^{n+1}
        let mut zpow = Complex64::new(1.0, 0.0); // z^{n/2}
        let mut fact = 1.0f64; // (n+1)!
        let mut inner = Complex64::new(0.0, 0.0);
        let mut abs_inner = 0.0f64;
        let mut n = 0u32;
        loop {
            let term = zpow * hermite_even_poly(n, y) * (dpow / fact);
            if n > n_max {
                next_acc += (e * term).norm();
                break;
            }
            inner += term;
            abs_inner += term.norm();
            dpow *= d2;
            zpow *= z;
            fact *= (n as f64 + 2.0) * (n as f64 + 3.0);
            n += 2;
        }
        total += e * inner;
        abs_acc += e.norm() * abs_inner;
    }
    let value = 2.0 * total;
    let denom = value.norm().max(f64::MIN_POSITIVE);
    let est = 2.0 * next_acc / denom + f64::EPSILON * 2.0 * abs_acc / denom;
    SeriesResult::new(value, cfg.n * (n_max as usize / 2 + 1), est)
}

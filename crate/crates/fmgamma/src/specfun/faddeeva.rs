//! F_0 through the Faddeeva function `w`.
//!
//! `F_0(z) = (1/2) sqrt(pi/z) erf(sqrt(z))` and
//! `erf(sqrt(z)) = 1 - e^{-z} w(i sqrt(z))`, so one good rational
//! approximation of `w` covers the whole upper half-plane at a fixed
//! cost.  The approximation used here replaces the defining integral
//!
//! ```text
//! w(zeta) = (i/pi) int e^{-t^2} / (zeta - t) dt
//! ```
//!
//! by a Gauss-Hermite sum, `w(zeta) ~ (i/pi) sum_k lambda_k/(zeta - t_k)`.
//! The front factor `i/pi` is pinned by the large-argument behaviour
//! `w(zeta) -> i/(sqrt(pi) zeta)` together with `sum lambda_k = sqrt(pi)`.
//! Pairing the symmetric nodes halves the work:
//!
//! ```text
//! w(zeta) ~ (2i/pi) zeta sum_{t_k > 0} lambda_k/(zeta^2 - t_k^2)
//! ```
//!
//! plus `(i/pi) lambda_c / zeta` for the centre node of an odd rule.
//! All poles of the rational form sit on the real axis, so only
//! `Im zeta > 0` is accepted; for F_0 that shuts out exactly the
//! negative real axis, where `i sqrt(z)` lands between the poles.

use num_complex::Complex64;
use std::f64::consts::{FRAC_1_PI, PI};

use super::HermiteRule;
use crate::{Error, Result, SeriesResult};

/// Rational approximation and its zeta-derivative in one pass.
///
/// The derivative feeds the error estimate: the true `w` satisfies
/// `w' = -2 zeta w + 2i/sqrt(pi)`, and how badly the rational form
/// misses that equation tracks how far it sits from `w` itself.
fn rational_parts(zeta: Complex64, rule: &HermiteRule) -> (Complex64, Complex64) {
    let zeta2 = zeta * zeta;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut dacc = Complex64::new(0.0, 0.0);
    let mut center = 0.0f64;
    for (&t, &lam) in rule.t.iter().zip(&rule.lambda) {
        if t > 0.0 {
            let t2 = t * t;
            let dinv = (zeta2 - t2).finv();
            acc += dinv * lam;
            dacc += dinv * dinv * (zeta2 + t2) * lam;
        } else if t == 0.0 {
            center = lam;
        }
    }
    let i_pi = Complex64::new(0.0, FRAC_1_PI);
    let zinv = zeta.finv();
    let w = i_pi * (2.0 * zeta * acc + center * zinv);
    let dw = -i_pi * (2.0 * dacc + center * zinv * zinv);
    (w, dw)
}

/// Defect of the rational form against `w' + 2 zeta w = 2i/sqrt(pi)`.
fn ode_residual(zeta: Complex64, w: Complex64, dw: Complex64) -> f64 {
    let drive = Complex64::new(0.0, 2.0 / PI.sqrt());
    (dw + 2.0 * zeta * w - drive).norm()
}

/// Rational approximation of the Faddeeva function, `Im zeta > 0`.
pub fn faddeeva(zeta: Complex64, rule: &HermiteRule) -> Result<Complex64> {
    if !(zeta.im > 0.0) {
        return Err(Error::Domain(
            "the rational Faddeeva form has poles on the real axis; Im zeta must be positive",
        ));
    }
    Ok(rational_parts(zeta, rule).0)
}

/// F_0 via the Faddeeva function, upper half-plane.
///
/// Strong for large |z|, where the fixed pole set approximates the
/// smooth integrand well; weak near the origin.  The negative real
/// axis is rejected because `i sqrt(z)` then falls onto the poles.
pub fn f0_via_faddeeva(z: Complex64, rule: &HermiteRule) -> Result<SeriesResult> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("F_0 via the Faddeeva function needs z != 0"));
    }
    if z.im < 0.0 {
        return Err(Error::Domain(
            "F_0 via the Faddeeva function serves Im z >= 0; conjugate first",
        ));
    }
    let root = z.sqrt();
    let zeta = Complex64::new(-root.im, root.re);
    if !(zeta.im > 0.0) {
        return Err(Error::Domain(
            "the rational Faddeeva form has poles on the real axis; Im zeta must be positive",
        ));
    }
    let (w, dw) = rational_parts(zeta, rule);
    let emz = (-z).exp();
    let pref = 0.5 * PI.sqrt() * root.finv();
    let value = pref * (Complex64::new(1.0, 0.0) - emz * w);
    let denom = value.norm().max(f64::MIN_POSITIVE);
    let est = 3.0 * ode_residual(zeta, w, dw) * emz.norm() * pref.norm() / denom
        + f64::EPSILON * pref.norm() * (1.0 + (emz * w).norm()) / denom;
    Ok(SeriesResult::new(value, rule.n, est))
}

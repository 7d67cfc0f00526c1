//! F_m as a short series of modified spherical Bessel functions.
//!
//! With `zeta = -z/2` the Kummer function behind F_m expands as
//!
//! ```text
//! (2m+1) F_m(z) = sum_n (-1)^n (2n+1) [(1-a)_n/(1+a)_n] T_n(zeta)
//! ```
//!
//! where `a = m + 1/2` and `T_n(zeta) = e^zeta i_n(zeta)` is the
//! exponentially scaled modified spherical Bessel function.  The
//! Pochhammer ratio decays like `n^{-2a}`, so the series earns its
//! keep only near the origin, where `T_n ~ zeta^n/(2n+1)!!` dies fast.
//!
//! Each `T_n` is a rational combination of `e^{2 zeta}` and 1.  Those
//! closed forms lose digits once `|2 zeta| < 1`, where `e^{2 zeta}-1`
//! type differences cancel; there the ladder is rebuilt by downward
//! recurrence normalised against `T_0` summed as a power series.

use num_complex::Complex64;

use crate::{Error, Result, SeriesResult};

/// Numerator polynomials of the closed forms, rows n = 0..=7.
///
/// Row n reads `T_n = [p(zeta) S - q(zeta) C] / (2 zeta^{n+1})` with
/// `S = A - 1, C = A + 1` for even n and the pair swapped for odd n,
/// `A = e^{2 zeta}`.  Coefficients are ascending and skip every other
/// power: p shares the parity of n, q has the opposite parity.
const ROWS: [(&[f64], &[f64]); 8] = [
    (&[1.0], &[]),
    (&[1.0], &[1.0]),
    (&[3.0, 1.0], &[3.0]),
    (&[15.0, 1.0], &[15.0, 6.0]),
    (&[105.0, 45.0, 1.0], &[105.0, 10.0]),
    (&[945.0, 105.0, 1.0], &[945.0, 420.0, 15.0]),
    (&[10395.0, 4725.0, 210.0, 1.0], &[10395.0, 1260.0, 21.0]),
    (
        &[135135.0, 17325.0, 378.0, 1.0],
        &[135135.0, 62370.0, 3150.0, 28.0],
    ),
];

/// Polynomial over every other power of zeta, lowest power 0 or 1.
fn sparse_poly(coeffs: &[f64], zeta: Complex64, odd: bool) -> Complex64 {
    let z2 = zeta * zeta;
    let mut v = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        v = v * z2 + c;
    }
    if odd {
        v * zeta
    } else {
        v
    }
}

/// Same polynomial with absolute coefficients at |zeta|, bounding the
/// magnitudes that enter the cancellation in the closed forms.
fn sparse_poly_abs(coeffs: &[f64], r: f64, odd: bool) -> f64 {
    let r2 = r * r;
    let mut v = 0.0f64;
    for &c in coeffs.iter().rev() {
        v = v * r2 + c;
    }
    if odd {
        v * r
    } else {
        v
    }
}

/// T_0..T_{n_top} by the closed forms, with a rounding bound per entry.
///
/// The bound records how much of the numerator magnitude cancels; it
/// is what caps the accuracy of the high rows just above the branch
/// switch at `|2 zeta| = 1`.
fn closed_ladder(n_top: usize, zeta: Complex64) -> Result<(Vec<Complex64>, Vec<f64>)> {
    if 2.0 * zeta.re > 700.0 {
        return Err(Error::Range("e^{2 zeta} overflows in the closed forms"));
    }
    let a = (2.0 * zeta).exp();
    let am = a - 1.0;
    let ap = a + 1.0;
    let r = zeta.norm();
    let cond = f64::EPSILON * (1.0 + 2.0 * r);
    let mut t = Vec::with_capacity(n_top + 1);
    let mut round = Vec::with_capacity(n_top + 1);
    let mut denom = 2.0 * zeta;
    for n in 0..=n_top.min(7) {
        let (p, q) = ROWS[n];
        let odd = n % 2 == 1;
        let (s, c) = if odd { (ap, am) } else { (am, ap) };
        let num = sparse_poly(p, zeta, odd) * s - sparse_poly(q, zeta, !odd) * c;
        let pieces = sparse_poly_abs(p, r, odd) * s.norm() + sparse_poly_abs(q, r, !odd) * c.norm();
        t.push(num / denom);
        round.push(cond * pieces / denom.norm());
        denom *= zeta;
    }
    if n_top == 8 {
        // one step of T_{n+1} = T_{n-1} - (2n+1)/zeta T_n past the table
        let factor = 15.0 * zeta.finv();
        t.push(t[6] - factor * t[7]);
        round.push(
            round[6]
                + factor.norm() * round[7]
                + f64::EPSILON * (t[6].norm() + (factor * t[7]).norm()),
        );
    }
    Ok((t, round))
}

/// `T_0 = (e^{2 zeta} - 1)/(2 zeta)` as the series `sum (2 zeta)^k/(k+1)!`,
/// immune to the cancellation that kills the closed form near zero.
fn i0e(zeta: Complex64) -> Complex64 {
    let u = 2.0 * zeta;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..40 {
        term *= u / (k as f64 + 1.0);
        sum += term;
        if term.norm() <= f64::EPSILON * sum.norm() {
            break;
        }
    }
    sum
}

/// T_0..T_{n_top} by downward recurrence, seeded well above n_top and
/// normalised against the series form of T_0.  Stable for any zeta;
/// used where the closed forms cancel.
fn miller_ladder(n_top: usize, zeta: Complex64) -> (Vec<Complex64>, Vec<f64>) {
    let n_start = n_top + 8 + (2.0 * zeta.norm()).ceil() as usize;
    let mut vals = vec![Complex64::new(0.0, 0.0); n_start + 2];
    vals[n_start] = Complex64::new(1.0, 0.0);
    let zinv = zeta.finv();
    for n in (1..=n_start).rev() {
        let v = vals[n + 1] + (2.0 * n as f64 + 1.0) * zinv * vals[n];
        vals[n - 1] = v;
        if v.norm() > 1e250 {
            for x in vals[n - 1..].iter_mut() {
                *x *= 1e-250;
            }
        }
    }
    let scale = i0e(zeta) / vals[0];
    let mut t = Vec::with_capacity(n_top + 1);
    let mut round = Vec::with_capacity(n_top + 1);
    for &v in vals.iter().take(n_top + 1) {
        let v = v * scale;
        t.push(v);
        round.push(8.0 * f64::EPSILON * v.norm());
    }
    (t, round)
}

fn ladder(n_top: usize, zeta: Complex64) -> Result<(Vec<Complex64>, Vec<f64>)> {
    if (2.0 * zeta).norm() >= 1.0 {
        closed_ladder(n_top, zeta)
    } else {
        Ok(miller_ladder(n_top, zeta))
    }
}

/// Scaled modified spherical Bessel term `T_n(zeta) = e^zeta i_n(zeta)`,
/// n <= 8.
pub fn bessel_term(n: usize, zeta: Complex64) -> Result<Complex64> {
    if n > 8 {
        return Err(Error::Domain("Bessel terms are tabulated for n <= 8"));
    }
    if zeta == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(if n == 0 { 1.0 } else { 0.0 }, 0.0));
    }
    Ok(ladder(n, zeta)?.0[n])
}

/// F_m by the Bessel series truncated after `n_max + 1` terms, n_max <= 7.
///
/// The first omitted term carries `zeta^{n_max+1}`, so the truncation
/// error falls off like `z^8` at full length; past `|z| ~ 1` the series
/// loses ground quickly.
pub fn bessel_series(m: u32, z: Complex64, n_max: usize) -> Result<SeriesResult> {
    if n_max > 7 {
        return Err(Error::Domain("the Bessel expansion keeps at most 8 terms"));
    }
    let a = m as f64 + 0.5;
    if z == Complex64::new(0.0, 0.0) {
        let value = Complex64::new(1.0 / (2.0 * a), 0.0);
        return Ok(SeriesResult::new(value, 1, f64::EPSILON));
    }
    let zeta = -0.5 * z;
    let (t, round) = ladder(n_max + 1, zeta)?;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0f64;
    let mut round_sum = 0.0f64;
    let mut ratio = 1.0f64;
    let mut sign = 1.0f64;
    for n in 0..=n_max {
        let coef = sign * (2.0 * n as f64 + 1.0) * ratio;
        let term = coef * t[n];
        sum += term;
        abs_sum += term.norm();
        round_sum += coef.abs() * round[n];
        ratio *= (1.0 - a + n as f64) / (1.0 + a + n as f64);
        sign = -sign;
    }
    let next = (2.0 * (n_max + 1) as f64 + 1.0) * ratio.abs() * t[n_max + 1].norm();
    let scale = sum.norm().max(f64::MIN_POSITIVE);
    let est = 2.0 * next / scale + round_sum / scale + f64::EPSILON * abs_sum / scale;
    Ok(SeriesResult::new(sum / (2.0 * a), n_max + 1, est))
}

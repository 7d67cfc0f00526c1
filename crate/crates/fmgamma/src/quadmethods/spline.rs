//! Closed-form integrals of cubic Hermite interpolants of the kernel.
//!
//! On each subinterval [t_j, t_{j+1}] the kernel e^{-zt^2} is replaced
//! by the cubic matching its values and derivatives at both knots; the
//! moment integrals of a cubic are explicit, so the whole sum collapses
//! into a short bracket per knot pair.  Only the first two indexes have
//! printed closed forms.  The `moment_integral` rules are the raw
//! per-interval pieces: exact for cubic data, they assemble into the
//! same sums and exist so that claim can be tested.

use num_complex::Complex64;

use crate::{Error, Result, SeriesResult};

/// `int_a^b x^p H(x) dx` for the cubic Hermite interpolant H of f.
///
/// Exact whenever f itself is a cubic.  Only the moments p = 0, 1, 2
/// ever get used here; higher ones are not provided.
pub fn moment_integral(
    p: u32,
    a: f64,
    b: f64,
    fa: Complex64,
    fb: Complex64,
    dfa: Complex64,
    dfb: Complex64,
) -> Complex64 {
    assert!(a < b, "interval must be ordered");
    let h = b - a;
    match p {
        0 => 0.5 * h * (fa + fb) - h * h / 12.0 * (dfb - dfa),
        1 => {
            let brace = (2.0 * dfb - 3.0 * dfa) * (a * a)
                + (dfb * b + 9.0 * fb + 21.0 * fa + dfa * b) * a
                + dfa * (2.0 * b * b)
                + fb * (21.0 * b)
                + fa * (9.0 * b)
                - dfb * (3.0 * b * b);
            h / 60.0 * brace
        }
        2 => {
            let brace = (dfb - 2.0 * dfa) * (a * a * a)
                + (dfb * b + 4.0 * fb + 16.0 * fa) * (a * a)
                + (dfa * b + 10.0 * fb + 10.0 * fa) * (a * b)
                + (4.0 * fa - 2.0 * dfb * b + 16.0 * fb + dfa * b) * (b * b);
            h / 60.0 * brace
        }
        _ => panic!("only the moments p <= 2 are provided"),
    }
}

/// Spline sum over N uniform subintervals; m must be 0 or 1.
pub fn spline_eval(m: u32, z: Complex64, n: usize) -> Result<SeriesResult> {
    assert!(n >= 1);
    if m > 1 {
        return Err(Error::Domain("only the first two indexes have closed spline forms"));
    }
    if z == Complex64::new(0.0, 0.0) {
        // the sums telescope to this exactly in real arithmetic, but not
        // in floating point
        return Ok(SeriesResult::new(
            Complex64::new(1.0 / (2.0 * m as f64 + 1.0), 0.0),
            n,
            0.0,
        ));
    }
    let h = 1.0 / n as f64;
    let knots: Vec<f64> = (0..=n).map(|j| j as f64 * h).collect();
    let kernel: Vec<Complex64> = knots.iter().map(|&t| (-z * (t * t)).exp()).collect();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut abs = 0.0f64;
    for j in 0..n {
        let (u, v) = (knots[j], knots[j + 1]);
        let term = if m == 0 {
            h / 6.0 * ((3.0 + z * (v * h)) * kernel[j + 1] + (3.0 - z * (u * h)) * kernel[j])
        } else {
            let bracket = |s: f64, t: f64| {
                z * (2.0 * s.powi(4) - s * s * t * t - s * t.powi(3))
                    + (8.0 * s * s + 5.0 * s * t + 2.0 * t * t)
            };
            h / 30.0 * (bracket(v, u) * kernel[j + 1] + bracket(u, v) * kernel[j])
        };
        acc += term;
        abs += term.norm();
    }
    let denom = acc.norm().max(f64::MIN_POSITIVE);
    let envelope = (-z.re).exp().max(1.0);
    let r = z.norm();
    let hermite_bound = h.powi(4) / 384.0 * (r * r) * (16.0 * r * r + 48.0 * r + 12.0);
    let est = hermite_bound * envelope / ((2.0 * m as f64 + 1.0) * denom)
        + n as f64 * f64::EPSILON * abs / denom;
    Ok(SeriesResult::new(acc, n, est))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{self, EvalRequest};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn digits(m: u32, z: Complex64, value: Complex64) -> f64 {
        oracle::digits_of(value, oracle::eval(&EvalRequest::new(m, z)).unwrap()).d
    }

    #[test]
    fn origin_is_exact() {
        assert_eq!(spline_eval(0, c(0.0, 0.0), 7).unwrap().value, c(1.0, 0.0));
        assert_eq!(spline_eval(1, c(0.0, 0.0), 13).unwrap().value, c(1.0 / 3.0, 0.0));
    }

    #[test]
    fn higher_indexes_are_rejected() {
        assert!(matches!(spline_eval(2, c(1.0, 0.0), 10), Err(Error::Domain(_))));
    }

    #[test]
    fn plain_moment_on_a_cubic() {
        let v = moment_integral(0, 0.0, 1.0, c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(3.0, 0.0));
        assert_eq!(v, c(0.25, 0.0));
    }

    #[test]
    fn first_moment_on_a_square() {
        let v = moment_integral(1, 0.0, 1.0, c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(2.0, 0.0));
        assert_eq!(v, c(0.25, 0.0));
    }

    proptest! {
        #[test]
        fn moments_are_exact_on_cubics(
            a in -2.0f64..1.0,
            width in 0.1f64..2.0,
            c0 in -1.0f64..1.0,
            c1 in -1.0f64..1.0,
            c2 in -1.0f64..1.0,
            c3 in -1.0f64..1.0,
            p in 0u32..=2
        ) {
            let b = a + width;
            let f = |x: f64| c0 + x * (c1 + x * (c2 + x * c3));
            let df = |x: f64| c1 + x * (2.0 * c2 + x * 3.0 * c3);
            let got = moment_integral(
                p, a, b,
                c(f(a), 0.0), c(f(b), 0.0), c(df(a), 0.0), c(df(b), 0.0),
            );
            let mut exact = 0.0;
            let mut scale = 0.0;
            for (i, ci) in [c0, c1, c2, c3].into_iter().enumerate() {
                let e = (i + p as usize + 1) as i32;
                exact += ci * (b.powi(e) - a.powi(e)) / e as f64;
                scale += ci.abs() * (b.abs().powi(e) + a.abs().powi(e)) / e as f64;
            }
            prop_assert!((got.re - exact).abs() <= 1e-13 * scale.max(1.0));
            prop_assert!(got.im == 0.0);
        }
    }

    #[test]
    fn moment_assembly_reproduces_the_closed_forms() {
        let z = c(2.0, -3.0);
        let n = 16;
        let h = 1.0 / n as f64;
        for m in [0u32, 1] {
            let mut sum = c(0.0, 0.0);
            for j in 0..n {
                let (a, b) = (j as f64 * h, (j + 1) as f64 * h);
                let f = |t: f64| (-z * (t * t)).exp();
                let df = |t: f64| -2.0 * z * t * f(t);
                sum += moment_integral(2 * m, a, b, f(a), f(b), df(a), df(b));
            }
            let closed = spline_eval(m, z, n).unwrap().value;
            assert!(
                (sum - closed).norm() <= 1e-13 * closed.norm(),
                "m={m}: assembled {sum}, closed {closed}"
            );
        }
    }

    #[test]
    fn doubling_the_knots_gains_about_a_digit() {
        for m in [0u32, 1] {
            for z in [c(3.0, 2.0), c(-2.0, 4.0)] {
                let d10 = digits(m, z, spline_eval(m, z, 10).unwrap().value);
                let d20 = digits(m, z, spline_eval(m, z, 20).unwrap().value);
                assert!(
                    (0.4..=2.0).contains(&(d20 - d10)),
                    "m={m} z={z}: {d10:.2} -> {d20:.2}"
                );
            }
        }
    }

    #[test]
    fn estimates_are_honest() {
        for m in [0u32, 1] {
            for z in [c(2.0, 1.0), c(-4.0, 3.0), c(0.0, 6.0)] {
                for n in [10usize, 20] {
                    let r = spline_eval(m, z, n).unwrap();
                    if r.error_estimate <= 1e-4 {
                        let d = digits(m, z, r.value);
                        assert!(
                            d >= -r.error_estimate.log10() - 1.0,
                            "m={m} z={z} N={n}: est {:.1e}, d {d:.2}",
                            r.error_estimate
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn conjugate_symmetry() {
        let up = spline_eval(1, c(-3.0, 5.0), 12).unwrap().value;
        let dn = spline_eval(1, c(-3.0, -5.0), 12).unwrap().value;
        assert_eq!(up.conj(), dn);
    }
}

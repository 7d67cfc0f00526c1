//! F_m from a continued fraction for a ratio of Kummer functions.
//!
//! The fraction
//!
//! ```text
//! K(a,b,z) = 1/(b+z-) z(b+1-a)/(b+1+z-) z(b+2-a)/(b+2+z-) ...
//! ```
//!
//! is cut at depth N.  The final partial denominator is taken as the
//! bare `b+N`: dropping z there matches where the tail of the infinite
//! fraction actually settles and buys about one digit over keeping it.
//!
//! Two routes lead from K to F_m.  Taking the fraction at `-z` gives
//! `F_m = (1/2) e^{-z} K(a,a,-z)` directly, which converges best near
//! the negative real axis.  Rearranging instead around `K(1,a,z)`
//! gives `F_m = e^{-z} K / (2 (1 - zK))`, which holds up in the right
//! half-plane where the direct route weakens.
//!
//! Depth probes supply the error estimates: the fraction is evaluated
//! again two levels shallower and the relative movement is taken as
//! the uncertainty.  A converged fraction moves by rounding noise
//! only, so a small floor covering the `e^{-z}` prefactor is added.

use num_complex::Complex64;

use crate::xprec::XComplex;
use crate::{Error, Result, SeriesResult};

const DEPTH_ERR: &str = "the continued fraction needs depth >= 1";
const ZERO_DEN_ERR: &str = "a partial denominator of the continued fraction vanished";

/// Backward evaluation of K(a,b,z) at depth n with the bare `b+n` cut.
pub fn dijkstra_k(a: f64, b: f64, z: Complex64, n: usize) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::Domain(DEPTH_ERR));
    }
    finish_k(a, b, z, n, Complex64::new(b + n as f64, 0.0))
}

/// Same fraction cut with the full `b+n+z` denominator, kept around to
/// show what the bare cut buys.
pub fn dijkstra_k_plain(a: f64, b: f64, z: Complex64, n: usize) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::Domain(DEPTH_ERR));
    }
    finish_k(a, b, z, n, Complex64::new(b + n as f64, 0.0) + z)
}

fn finish_k(a: f64, b: f64, z: Complex64, n: usize, tail: Complex64) -> Result<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let mut t = tail;
    for k in (1..=n).rev() {
        if t == zero {
            return Err(Error::Range(ZERO_DEN_ERR));
        }
        t = Complex64::new(b + (k - 1) as f64, 0.0) + z - z * (b + k as f64 - a) / t;
    }
    if t == zero {
        return Err(Error::Range(ZERO_DEN_ERR));
    }
    Ok(t.finv())
}

/// Double-word twin of [`dijkstra_k`], for measurements past binary64.
pub fn dijkstra_k_x(a: f64, b: f64, z: XComplex, n: usize) -> Result<XComplex> {
    if n == 0 {
        return Err(Error::Domain(DEPTH_ERR));
    }
    let mut t = XComplex::from_f64(b + n as f64, 0.0);
    for k in (1..=n).rev() {
        if t.abs_sqr().to_f64() == 0.0 {
            return Err(Error::Range(ZERO_DEN_ERR));
        }
        t = XComplex::from_f64(b + (k - 1) as f64, 0.0) + z - z * (b + k as f64 - a) / t;
    }
    if t.abs_sqr().to_f64() == 0.0 {
        return Err(Error::Range(ZERO_DEN_ERR));
    }
    Ok(XComplex::ONE / t)
}

/// F_m as `(1/2) e^{-z} K(a,a,-z)`, strongest near the negative real
/// axis where the fraction argument is large and positive.
pub fn f_via_dijkstra(m: u32, z: Complex64, n: usize) -> Result<SeriesResult> {
    if -z.re > 700.0 {
        return Err(Error::Range("e^{-z} overflows"));
    }
    let a = m as f64 + 0.5;
    let k = dijkstra_k(a, a, -z, n)?;
    let value = 0.5 * (-z).exp() * k;
    let floor = f64::EPSILON * (2.0 + z.norm());
    let est = if n == 1 {
        1.0
    } else {
        match dijkstra_k(a, a, -z, if n > 2 { n - 2 } else { 1 }) {
            Ok(shallow) => {
                2.0 * (k - shallow).norm() / k.norm().max(f64::MIN_POSITIVE) + floor
            }
            Err(_) => 1.0,
        }
    };
    Ok(SeriesResult::new(value, n, est))
}

/// Double-word twin of [`f_via_dijkstra`].
pub fn f_via_dijkstra_x(m: u32, z: XComplex, n: usize) -> Result<XComplex> {
    let a = m as f64 + 0.5;
    let k = dijkstra_k_x(a, a, -z, n)?;
    Ok((-z).exp()? * k * 0.5)
}

/// F_m for m >= 1 from the rearranged fraction `K(1, a, z)` taken at
/// +z, via `F_m = e^{-z} K / (2 (1 - zK))`.
///
/// The rearrangement reaches F_m without stepping the three-term
/// recurrence, so no cancellation between neighbouring F values is
/// ever incurred; it is the form of choice in the right half-plane.
pub fn f_via_dijkstra_pos(m: u32, z: Complex64, n: usize) -> Result<SeriesResult> {
    if m == 0 {
        return Err(Error::Domain("the rearranged fraction starts at m = 1"));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("the rearranged fraction needs z != 0"));
    }
    if -z.re > 700.0 {
        return Err(Error::Range("e^{-z} overflows"));
    }
    let a = m as f64 + 0.5;
    let assemble = |k: Complex64| -> Result<(Complex64, f64)> {
        let den = 1.0 - z * k;
        if den == Complex64::new(0.0, 0.0) {
            return Err(Error::Range("the rearranged fraction hit a zero of 1 - zK"));
        }
        let condition = (1.0 + (z * k).norm()) / den.norm();
        Ok(((-z).exp() * k / (2.0 * den), condition))
    };
    let k = dijkstra_k(1.0, a, z, n)?;
    let (value, condition) = assemble(k)?;
    let floor = f64::EPSILON * (condition + 2.0 + z.norm());
    let est = if n == 1 {
        1.0
    } else {
        let shallow = dijkstra_k(1.0, a, z, if n > 2 { n - 2 } else { 1 }).and_then(&assemble);
        match shallow {
            Ok((probe, _)) => {
                2.0 * (value - probe).norm() / value.norm().max(f64::MIN_POSITIVE) + floor
            }
            Err(_) => 1.0,
        }
    };
    Ok(SeriesResult::new(value, n, est))
}

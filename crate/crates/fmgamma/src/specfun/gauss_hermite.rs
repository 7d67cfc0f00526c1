//! Gauss-Hermite rules for `int f(x) e^{-x^2} dx` over the real line.
//!
//! Nodes are the roots of `H_n`.  They are seeded degree by degree:
//! the roots of each Hermite polynomial separate those of the next, so
//! bisection on the sign of `H_k` always has a bracket.  Each seed is
//! then polished with a second-order Newton step whose logarithmic
//! derivative `H'/H` comes from a backward continued fraction, which
//! sidesteps the huge dynamic range of `H_n` itself.  The polish loop
//! and the weights run in double-word arithmetic so the stored
//! binary64 nodes and weights are correctly rounded.

use crate::xprec::XReal;
use crate::{Error, Result};

/// Nodes and weights of one Gauss-Hermite rule.
///
/// Nodes are strictly increasing and exactly antisymmetric about zero;
/// the weights are positive, symmetric, and sum to `sqrt(pi)`.
#[derive(Clone, Debug)]
pub struct HermiteRule {
    pub n: usize,
    /// Roots of `H_n`, ascending.
    pub t: Vec<f64>,
    /// Weight attached to each root.
    pub lambda: Vec<f64>,
}

/// Sign of `H_n(x)` by the three-term recurrence, rescaled to avoid
/// overflow.  Only the sign survives, which is all bisection needs.
fn hermite_sign(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0f64;
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
        if cur.abs() > 1e250 {
            prev *= 1e-250;
            cur *= 1e-250;
        }
    }
    cur.signum()
}

fn bisect_root(n: usize, mut lo: f64, mut hi: f64) -> f64 {
    let sign_lo = hermite_sign(n, lo);
    for _ in 0..30 {
        let mid = 0.5 * (lo + hi);
        if hermite_sign(n, mid) == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Roots of `H_n` to bisection accuracy, ascending, built level by
/// level from the interlacing property.  All roots of `H_k` lie inside
/// `(-sqrt(2k+1), sqrt(2k+1))`.
fn seed_roots(n: usize) -> Vec<f64> {
    let mut roots = vec![0.0f64];
    for k in 2..=n {
        let bound = (2.0 * k as f64 + 1.0).sqrt();
        let mut next = Vec::with_capacity(k);
        let mut lo = -bound;
        for &r in &roots {
            next.push(bisect_root(k, lo, r));
            lo = r;
        }
        next.push(bisect_root(k, lo, bound));
        roots = next;
    }
    roots
}

/// `H_n/H_n'` at `x`, inverted from the backward continued fraction
/// `H'/H = 2n/(2x-) 2(n-1)/(2x-) ... 2/(2x)`.
fn inverse_log_derivative(n: usize, x: XReal) -> XReal {
    let two_x = x * 2.0;
    let mut t = two_x;
    for k in 1..n {
        t = two_x - t.recip() * (2.0 * k as f64);
    }
    t / (2.0 * n as f64)
}

/// Newton iteration with the curvature correction,
/// `x <- x - r (1 + x r)` for `r = H/H'`.
///
/// The stopping band `|dx| <= 1e-17 |x|` sits below one binary64 ulp,
/// so the whole loop runs in double-word arithmetic, whose rounding
/// noise stalls the steps around 1e-30 |x| instead.
fn polish(n: usize, seed: f64) -> Result<XReal> {
    let mut x = XReal::from(seed);
    for _ in 0..50 {
        let r = inverse_log_derivative(n, x);
        let dx = r * (x * r + 1.0);
        x = x - dx;
        if dx.abs().to_f64() <= 1e-17 * x.abs().to_f64() + 1e-300 {
            return Ok(x);
        }
    }
    Err(Error::Range("Newton polish of a Hermite node failed to settle"))
}

/// `H_n(x)` in double-word arithmetic.  For n <= 63 the values stay
/// far below the overflow threshold, so no rescaling is needed.
fn hermite_value_x(n: usize, x: XReal) -> XReal {
    if n == 0 {
        return XReal::ONE;
    }
    let mut prev = XReal::ONE;
    let mut cur = x * 2.0;
    for k in 1..n {
        let next = x * cur * 2.0 - prev * (2.0 * k as f64);
        prev = cur;
        cur = next;
    }
    cur
}

/// Builds the n-point rule, `1 <= n <= 64`.
///
/// Weights come from `lambda_k = 2^{n-1} n! sqrt(pi) / (n^2 H_{n-1}(t_k)^2)`
/// with the front factor accumulated as a running product.  Only the
/// positive nodes are computed; mirroring makes the symmetry of nodes
/// and weights exact by construction.
pub fn hermite_rule(n: usize) -> Result<HermiteRule> {
    if n < 1 || n > 64 {
        return Err(Error::Domain("Gauss-Hermite rules cover 1 <= n <= 64"));
    }
    let seeds = seed_roots(n);
    let mut scale = XReal::SQRT_PI / (2.0 * (n * n) as f64);
    for i in 1..=n {
        scale = scale * (2.0 * i as f64);
    }
    let mut t = vec![0.0f64; n];
    let mut lambda = vec![0.0f64; n];
    for i in 0..n / 2 {
        let x = polish(n, seeds[n - 1 - i])?;
        let h = hermite_value_x(n - 1, x);
        let node = x.to_f64();
        let weight = (scale / (h * h)).to_f64();
        t[n - 1 - i] = node;
        t[i] = -node;
        lambda[n - 1 - i] = weight;
        lambda[i] = weight;
    }
    if n % 2 == 1 {
        let h = hermite_value_x(n - 1, XReal::ZERO);
        t[n / 2] = 0.0;
        lambda[n / 2] = (scale / (h * h)).to_f64();
    }
    Ok(HermiteRule { n, t, lambda })
}

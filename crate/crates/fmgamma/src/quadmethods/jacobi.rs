//! Gaussian rules for moment integrals `int_0^1 x^k f(x) dx`.
//!
//! The abscissae are the roots of the Jacobi polynomial
//! `P_n^{(k,0)}(1-2t)`, found degree by degree: the roots of each
//! polynomial separate those of the next, so bisection never lacks a
//! bracket, and a safeguarded Newton finishes the job.  The final roots
//! and all weights are refined in double-word arithmetic so the stored
//! binary64 values are correctly rounded.
//!
//! A rule with weight exponent k = 2m integrates the even kernel
//! directly: `F_m(z) ~ sum_i w_i e^{-z x_i^2}`.

use num_complex::Complex64;

use crate::xprec::XReal;
use crate::{Error, Result, SeriesResult};

/// Weight function the rule was generated for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleKind {
    /// Moment weight x^k on [0,1].
    GaussJacobi(u32),
    /// Plain unit weight on [0,1] (the k = 0 case under its usual name).
    GaussLegendre,
}

/// Nodes and weights of one moment rule.
#[derive(Clone, Debug)]
pub struct QuadRule {
    pub kind: RuleKind,
    pub n: usize,
    /// Abscissae, strictly increasing inside (0,1).
    pub x: Vec<f64>,
    /// Weights, all positive, summing to 1/(k+1).
    pub w: Vec<f64>,
}

impl QuadRule {
    fn exponent(&self) -> u32 {
        match self.kind {
            RuleKind::GaussJacobi(k) => k,
            RuleKind::GaussLegendre => 0,
        }
    }
}

/// P_j and P_{j-1} of the Jacobi family (alpha, 0) at xi.
fn jacobi_pair(n: usize, alpha: f64, xi: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut prev = 1.0f64;
    let mut cur = 0.5 * (alpha + (alpha + 2.0) * xi);
    for j in 2..=n {
        let j = j as f64;
        let b = 2.0 * j + alpha;
        let num = (b - 1.0) * ((b * (b - 2.0)) * xi + alpha * alpha) * cur
            - 2.0 * (j + alpha - 1.0) * (j - 1.0) * b * prev;
        prev = cur;
        cur = num / (2.0 * j * (j + alpha) * (b - 2.0));
    }
    (cur, prev)
}

fn jacobi_pair_x(n: usize, alpha: f64, xi: XReal) -> (XReal, XReal) {
    if n == 0 {
        return (XReal::ONE, XReal::ZERO);
    }
    let mut prev = XReal::ONE;
    let mut cur = (xi * (alpha + 2.0) + alpha) * 0.5;
    for j in 2..=n {
        let j = j as f64;
        let b = 2.0 * j + alpha;
        let num = (xi * (b * (b - 2.0)) + alpha * alpha) * cur * (b - 1.0)
            - prev * (2.0 * (j + alpha - 1.0) * (j - 1.0) * b);
        prev = cur;
        cur = num / (2.0 * j * (j + alpha) * (b - 2.0));
    }
    (cur, prev)
}

/// Derivative from the value pair; valid away from xi = +-1.
fn jacobi_deriv(n: usize, alpha: f64, xi: f64, pn: f64, pn1: f64) -> f64 {
    let nf = n as f64;
    let b = 2.0 * nf + alpha;
    (nf * (alpha - b * xi) * pn + 2.0 * (nf + alpha) * nf * pn1) / (b * (1.0 - xi * xi))
}

/// One root inside the sign-changing bracket (lo, hi).
fn root_in_bracket(n: usize, alpha: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut flo = jacobi_pair(n, alpha, lo).0;
    let fhi = jacobi_pair(n, alpha, hi).0;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if (flo > 0.0) == (fhi > 0.0) {
        return Err(Error::Range("lost the sign change that brackets a quadrature node"));
    }
    // bisect until Newton is safe, then let it finish, never leaving
    // the bracket
    for _ in 0..24 {
        let mid = 0.5 * (lo + hi);
        let fmid = jacobi_pair(n, alpha, mid).0;
        if fmid == 0.0 {
            return Ok(mid);
        }
        if (fmid > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    let mut xi = 0.5 * (lo + hi);
    for _ in 0..12 {
        let (pn, pn1) = jacobi_pair(n, alpha, xi);
        if pn == 0.0 {
            break;
        }
        if (pn > 0.0) == (flo > 0.0) {
            lo = xi;
        } else {
            hi = xi;
        }
        let step = pn / jacobi_deriv(n, alpha, xi, pn, pn1);
        let next = xi - step;
        xi = if next > lo && next < hi { next } else { 0.5 * (lo + hi) };
        if step.abs() <= 4.0 * f64::EPSILON * xi.abs().max(0.25) {
            break;
        }
    }
    Ok(xi)
}

/// All roots of P_n^{(alpha,0)}, ascending in xi.
fn jacobi_roots(n: usize, alpha: f64) -> Result<Vec<f64>> {
    let mut roots = vec![-alpha / (alpha + 2.0)];
    for j in 2..=n {
        let mut next = Vec::with_capacity(j);
        let mut lo = -1.0;
        for &hi in roots.iter().chain(std::iter::once(&1.0)) {
            next.push(root_in_bracket(j, alpha, lo, hi)?);
            lo = hi;
        }
        roots = next;
    }
    Ok(roots)
}

/// 1/w at a node: sum_j (alpha + 2j + 1) P_j(xi)^2 over j < n.
fn inverse_weight_x(n: usize, alpha: f64, xi: XReal) -> XReal {
    let mut inv = XReal::ZERO;
    let mut prev = XReal::ZERO;
    let mut cur = XReal::ONE;
    for j in 0..n {
        inv = inv + cur * cur * (alpha + 2.0 * j as f64 + 1.0);
        let jn = (j + 1) as f64;
        let next = if j == 0 {
            (xi * (alpha + 2.0) + alpha) * 0.5
        } else {
            let b = 2.0 * jn + alpha;
            ((xi * (b * (b - 2.0)) + alpha * alpha) * cur * (b - 1.0)
                - prev * (2.0 * (jn + alpha - 1.0) * (jn - 1.0) * b))
                / (2.0 * jn * (jn + alpha) * (b - 2.0))
        };
        prev = cur;
        cur = next;
    }
    inv
}

/// The n-point rule before the final rounding: double-word (node,
/// weight) pairs, ascending in the node, for callers that need more
/// than binary64 when diffing against printed reference values.
pub fn gauss_jacobi_rule_x(n: usize, k: u32) -> Result<Vec<(XReal, XReal)>> {
    assert!((1..=64).contains(&n), "point count out of range");
    assert!(k % 2 == 0 && k <= 16, "weight exponent must be an even index doubled, at most 16");
    let alpha = k as f64;
    let roots = jacobi_roots(n, alpha)?;
    let mut rule = Vec::with_capacity(n);
    // descending xi maps to ascending t = (1 - xi)/2
    for &r in roots.iter().rev() {
        let mut xi = XReal::from(r);
        for _ in 0..3 {
            let (pn, pn1) = jacobi_pair_x(n, alpha, xi);
            let nf = n as f64;
            let b = 2.0 * nf + alpha;
            let deriv = ((-xi * b + alpha) * pn * nf + pn1 * (2.0 * (nf + alpha) * nf))
                / ((XReal::ONE - xi * xi) * b);
            xi = xi - pn / deriv;
        }
        rule.push(((XReal::ONE - xi) * 0.5, inverse_weight_x(n, alpha, xi).recip()));
    }
    Ok(rule)
}

/// Builds the n-point rule for the moment weight x^k.
pub fn gauss_jacobi_rule(n: usize, k: u32) -> Result<QuadRule> {
    let pairs = gauss_jacobi_rule_x(n, k)?;
    let mut x = Vec::with_capacity(n);
    let mut w = Vec::with_capacity(n);
    for (t, wt) in pairs {
        x.push(t.to_f64());
        w.push(wt.to_f64());
    }
    Ok(QuadRule { kind: RuleKind::GaussJacobi(k), n, x, w })
}

/// The k = 0 rule under its classical label.
pub fn gauss_legendre_rule(n: usize) -> Result<QuadRule> {
    let mut rule = gauss_jacobi_rule(n, 0)?;
    rule.kind = RuleKind::GaussLegendre;
    Ok(rule)
}

/// Applies a rule whose weight carries t^{2m} to the kernel.
pub fn gauss_jacobi_eval(m: u32, z: Complex64, rule: &QuadRule) -> Result<SeriesResult> {
    if rule.exponent() != 2 * m {
        return Err(Error::Domain("rule weight exponent does not match the index"));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut abs = 0.0f64;
    for (&x, &w) in rule.x.iter().zip(&rule.w) {
        let term = w * (-z * (x * x)).exp();
        acc += term;
        abs += term.norm();
    }
    let denom = acc.norm().max(f64::MIN_POSITIVE);
    let envelope = (-z.re).exp().max(1.0);
    let reach = std::f64::consts::E * z.norm() / (4.0 * (rule.n as f64 + 1.0));
    let est = reach.powi(rule.n as i32 + 1) * envelope / denom
        + rule.n as f64 * f64::EPSILON * abs / denom;
    Ok(SeriesResult::new(acc, rule.n, est))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{self, EvalRequest};
    use crate::quadmethods::{hermite_local_taylor, SubintervalConfig};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn digits(m: u32, z: Complex64, value: Complex64) -> f64 {
        oracle::digits_of(value, oracle::eval(&EvalRequest::new(m, z)).unwrap()).d
    }

    #[test]
    fn one_point_rules_by_hand() {
        let r = gauss_jacobi_rule(1, 0).unwrap();
        assert!((r.x[0] - 0.5).abs() <= 1e-16 && (r.w[0] - 1.0).abs() <= 1e-16);
        let r = gauss_jacobi_rule(1, 2).unwrap();
        assert!((r.x[0] - 0.75).abs() <= 1e-16);
        assert!((r.w[0] - 1.0 / 3.0).abs() <= 1e-16);
    }

    #[test]
    fn legendre_two_point() {
        let r = gauss_legendre_rule(2).unwrap();
        assert_eq!(r.kind, RuleKind::GaussLegendre);
        let shift = 0.5 / 3.0f64.sqrt();
        assert!((r.x[0] - (0.5 - shift)).abs() <= 1e-15);
        assert!((r.x[1] - (0.5 + shift)).abs() <= 1e-15);
        assert!((r.w[0] - 0.5).abs() <= 1e-15 && (r.w[1] - 0.5).abs() <= 1e-15);
    }

    #[test]
    fn twenty_point_spot_values() {
        let r2 = gauss_jacobi_rule(20, 2).unwrap();
        assert!((r2.x[0] - 0.014204211159358153).abs() <= 2e-17);
        assert!((r2.w[0] - 0.3749220993337134772e-5).abs() <= 2e-21);
        assert!((r2.x[19] - 0.99686931625925641).abs() <= 2e-16);
        assert!((r2.w[19] - 0.0079757927362766517).abs() <= 2e-17);
        let r4 = gauss_jacobi_rule(20, 4).unwrap();
        assert!((r4.x[19] - 0.99712458452428368).abs() <= 2e-16);
        assert!((r4.w[19] - 0.0072877914199740330).abs() <= 2e-17);
        assert!((r4.x[0] - 0.028236722182933158).abs() <= 2e-17);
        assert!((r4.w[0] - 0.17148956701590667e-7).abs() <= 2e-23);
    }

    #[test]
    fn weights_sum_to_the_zeroth_moment() {
        for (n, k) in [(5usize, 0u32), (20, 2), (20, 4), (33, 8), (64, 16)] {
            let r = gauss_jacobi_rule(n, k).unwrap();
            let sum: f64 = r.w.iter().sum();
            assert!(
                (sum - 1.0 / (k as f64 + 1.0)).abs() <= 1e-14,
                "n={n} k={k}: sum={sum:.17}"
            );
            assert!(r.w.iter().all(|&w| w > 0.0));
            assert!(r.x.windows(2).all(|p| p[0] < p[1]));
            assert!(r.x[0] > 0.0 && r.x[n - 1] < 1.0);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn exact_on_polynomials_under_the_moment_weight(
            n in 2usize..=20,
            k in prop::sample::select(vec![0u32, 2, 4, 8, 16]),
            coeffs in prop::collection::vec(-1.0f64..1.0, 1..8)
        ) {
            let r = gauss_jacobi_rule(n, k).unwrap();
            prop_assume!(coeffs.len() <= 2 * n - 1);
            let quad: f64 = r
                .x
                .iter()
                .zip(&r.w)
                .map(|(&x, &w)| {
                    w * coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
                })
                .sum();
            let mut exact = 0.0;
            let mut scale = 0.0;
            for (j, &cj) in coeffs.iter().enumerate() {
                let moment = 1.0 / (k as f64 + j as f64 + 1.0);
                exact += cj * moment;
                scale += moment.abs() * cj.abs();
            }
            prop_assert!((quad - exact).abs() <= 1e-12 * scale.max(1e-30));
        }
    }

    #[test]
    fn origin_recovers_the_plain_moment() {
        for m in [0u32, 1, 3, 8] {
            let r = gauss_jacobi_rule(12, 2 * m).unwrap();
            let v = gauss_jacobi_eval(m, c(0.0, 0.0), &r).unwrap().value;
            assert!((v - c(1.0 / (2.0 * m as f64 + 1.0), 0.0)).norm() <= 1e-14);
        }
    }

    #[test]
    fn mismatched_rule_is_rejected() {
        let r = gauss_jacobi_rule(8, 2).unwrap();
        assert!(matches!(gauss_jacobi_eval(0, c(1.0, 0.0), &r), Err(Error::Domain(_))));
    }

    #[test]
    fn outperforms_the_local_taylor_sum_at_matched_cost() {
        let rule = gauss_jacobi_rule(10, 0).unwrap();
        let cfg = SubintervalConfig::new(10);
        for z in [c(3.0, 2.0), c(-4.0, 3.0), c(0.0, 6.0)] {
            let dj = digits(0, z, gauss_jacobi_eval(0, z, &rule).unwrap().value);
            let dh = digits(0, z, hermite_local_taylor(z, &cfg, 6).value);
            assert!(dj >= dh, "z={z}: jacobi {dj:.2}, taylor {dh:.2}");
        }
    }

    #[test]
    fn far_quadrant_stays_in_band() {
        let rule = gauss_jacobi_rule(20, 2).unwrap();
        let d = digits(1, c(-10.0, 10.0), gauss_jacobi_eval(1, c(-10.0, 10.0), &rule).unwrap().value);
        assert!(d >= 2.5, "d={d:.2}");
    }

    #[test]
    fn estimates_are_honest() {
        for (m, n) in [(0u32, 20usize), (1, 20), (2, 32), (0, 8)] {
            let rule = gauss_jacobi_rule(n, 2 * m).unwrap();
            for z in [c(2.0, 0.0), c(-10.0, 10.0), c(5.0, 12.0), c(-14.0, 2.0)] {
                let r = gauss_jacobi_eval(m, z, &rule).unwrap();
                if r.error_estimate <= 1e-4 {
                    let d = digits(m, z, r.value);
                    assert!(
                        d >= -r.error_estimate.log10() - 1.0,
                        "m={m} n={n} z={z}: est {:.1e}, d {d:.2}",
                        r.error_estimate
                    );
                }
            }
        }
    }

    #[test]
    fn conjugate_symmetry() {
        let rule = gauss_jacobi_rule(16, 2).unwrap();
        let up = gauss_jacobi_eval(1, c(-6.0, 9.0), &rule).unwrap().value;
        let dn = gauss_jacobi_eval(1, c(-6.0, -9.0), &rule).unwrap().value;
        assert_eq!(up.conj(), dn);
    }
}

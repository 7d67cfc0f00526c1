//! Reference evaluation of F_m(z) and the digit-counting metric.
//!
//! Every survey in this crate grades a fast method against the value
//! produced here.  The evaluator runs entirely in double-word arithmetic
//! and keeps an a-posteriori account of its own rounding and truncation;
//! a request is answered only when that account stays below 1e-20, so a
//! certified result carries at least 20 correct significant digits.
//!
//! Three routes cover the guaranteed domain `|z| <= 45`, `m <= 64`:
//!
//! * the ascending series in `z`, used for `|z| <= 18` where its
//!   cancellation is provably mild, and beyond that whenever its account
//!   stays clean (the left half-plane, where all terms share a sign);
//! * the descending series in `1/z`, whose smallest term sets a hard
//!   floor; it is accepted only when that floor is deep enough;
//! * 200-point Gauss-Legendre quadrature of the defining integral, the
//!   fallback for the middle ring where both series lose digits.  With
//!   200 points the quadrature truncation is far below the double-word
//!   noise for every `|z| <= 60`, so its account is pure rounding.
//!
//! `Im z < 0` is folded to the upper half-plane by conjugate symmetry, so
//! reflected requests agree bit for bit.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::xprec::{XComplex, XReal};
use crate::{Error, Result};

/// Radius of the certified disc.
pub const GUARANTEE_RADIUS: f64 = 45.0;
/// Largest certified index.
pub const M_MAX: u32 = 64;
/// A certified value's relative error account stays below this.
pub const GUARANTEE_EST: f64 = 1e-20;

/// One reference request: the index `m` and the argument `z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalRequest {
    pub m: u32,
    pub z: Complex64,
}

impl EvalRequest {
    pub fn new(m: u32, z: Complex64) -> Self {
        EvalRequest { m, z }
    }

    /// The half-integer slot `a = m + 1/2` the index occupies.
    pub fn a(&self) -> f64 {
        self.m as f64 + 0.5
    }
}

/// Which expansion a digit target is best served by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    PowerSeries,
    Laurent,
}

/// Valid-digit count of `approx` against a reference value.
#[derive(Clone, Copy, Debug)]
pub struct AccuracyResult {
    /// Negative decimal log of the relative error, clamped to [0, 31].
    pub d: f64,
    pub approx: Complex64,
    pub reference: XComplex,
    /// Set when the reference is too small for a relative measure and the
    /// comparison fell back to absolute error.
    pub absolute: bool,
}

/// Evaluates F_m(z) to at least 20 certified digits.
///
/// Outside the certified domain, or on the rare account overrun inside
/// it, the error carries the best value obtained and its estimate.
pub fn eval(req: &EvalRequest) -> Result<XComplex> {
    let reflect = req.z.im < 0.0;
    let zw = if reflect { req.z.conj() } else { req.z };
    let (value, _, est) = eval_routed(req.m, XComplex::from(zw))?;
    let value = if reflect { value.conj() } else { value };
    let certified =
        req.z.norm() <= GUARANTEE_RADIUS && req.m <= M_MAX && est <= GUARANTEE_EST;
    if certified {
        Ok(value)
    } else {
        Err(Error::Unreliable { value: value.to_c64(), est })
    }
}

/// `int_0^1 t^p e^{-z t^2} dt` by the extended-precision quadrature, for
/// any moment `p`, odd ones included.  This is the brute-force check the
/// half-integer closed forms are compared against.
pub fn eval_moment(p: u32, z: Complex64) -> Result<XComplex> {
    let reflect = z.im < 0.0;
    let zw = XComplex::from(if reflect { z.conj() } else { z });
    let mut sum = XComplex::ZERO;
    let mut abs_sum = 0.0;
    for &(t, w) in gauss_legendre_200() {
        let kernel = (-(zw * (t * t))).exp()?;
        let term = kernel * (t.powi(p as i32) * w);
        abs_sum += term.to_c64().norm();
        sum = sum + term;
    }
    let est = ROUND_UNIT_EXP * abs_sum / sum.to_c64().norm().max(f64::MIN_POSITIVE);
    if est > GUARANTEE_EST {
        return Err(Error::Unreliable { value: sum.to_c64(), est });
    }
    Ok(if reflect { sum.conj() } else { sum })
}

/// All of F_0(z) ... F_{m_max}(z) in one sweep of the quadrature rule.
/// Grid generation calls this once per node; the kernel exponentials are
/// shared across indices, so the whole ladder costs barely more than a
/// single evaluation.
pub fn eval_ladder(m_max: u32, z: Complex64) -> Result<Vec<XComplex>> {
    let reflect = z.im < 0.0;
    let zw = XComplex::from(if reflect { z.conj() } else { z });
    let rule = gauss_legendre_200();
    let mut sums = vec![XComplex::ZERO; m_max as usize + 1];
    let mut abs = vec![0.0f64; m_max as usize + 1];
    for &(t, w) in rule {
        let t2 = t * t;
        let mut f = (-(zw * t2)).exp()? * w;
        for m in 0..=m_max as usize {
            sums[m] = sums[m] + f;
            abs[m] += f.to_c64().norm();
            f = f * t2;
        }
    }
    for (m, s) in sums.iter().enumerate() {
        let est = ROUND_UNIT_EXP * abs[m] / s.to_c64().norm().max(f64::MIN_POSITIVE);
        if est > GUARANTEE_EST {
            return Err(Error::Unreliable { value: s.to_c64(), est });
        }
    }
    if reflect {
        for s in sums.iter_mut() {
            *s = s.conj();
        }
    }
    Ok(sums)
}

/// Picks the cheaper of the two expansions that still reaches `target_d`
/// digits.  The descending series bottoms out near its smallest term,
/// reached around `n = |z| + a`; below that floor only the ascending
/// series can go, whatever the cost.
pub fn series_branch(z: Complex64, a: f64, target_d: f64) -> Branch {
    let r = z.norm();
    if r <= 1.0 {
        return Branch::PowerSeries;
    }
    let n = (r + a).floor() as i32;
    let mut log_min = 0.0f64;
    for k in 1..=n {
        let num = (k as f64 - a).abs().max(f64::MIN_POSITIVE);
        log_min += num.log10() - r.log10();
    }
    if log_min <= -(target_d + 1.0) {
        Branch::Laurent
    } else {
        Branch::PowerSeries
    }
}

/// Counts the decimal digits `approx` shares with `reference`.
pub fn digits_of(approx: Complex64, reference: XComplex) -> AccuracyResult {
    let ref_norm = reference.to_c64().norm();
    let diff = (XComplex::from(approx) - reference).to_c64().norm();
    let (err, absolute) = if ref_norm < 1e-250 {
        (diff, true)
    } else {
        (diff / ref_norm, false)
    };
    let d = if err == 0.0 { 31.0 } else { (-err.log10()).clamp(0.0, 31.0) };
    AccuracyResult { d, approx, reference, absolute }
}

/// Digit metric for a double-word candidate against a double-word
/// reference.  The 31-digit clamp matches the carrier's own width.
pub fn digits_of_x(approx: XComplex, reference: XComplex) -> f64 {
    let ref_norm = reference.to_c64().norm();
    let diff = (approx - reference).to_c64().norm();
    let err = if ref_norm < 1e-250 { diff } else { diff / ref_norm };
    if err == 0.0 {
        31.0
    } else {
        (-err.log10()).clamp(0.0, 31.0)
    }
}

/// `F_m` from `F_{m-1}`:  `F_m = ((2m-1) F_{m-1} - e^{-z}) / (2z)`.
///
/// Climbing this way amplifies errors once `m` outruns `|z|`; it is the
/// caller's business to stop in time.
pub fn recurrence_forward(m: u32, f_prev: XComplex, z: XComplex) -> Result<XComplex> {
    if m == 0 {
        return Err(Error::Domain("recurrence needs m >= 1"));
    }
    if z.re.hi == 0.0 && z.im.hi == 0.0 {
        return Err(Error::Domain("forward recurrence needs z != 0"));
    }
    let e = (-z).exp()?;
    Ok((f_prev * (2.0 * m as f64 - 1.0) - e) / (z * 2.0))
}

/// `F_{m-1}` from `F_m`:  `F_{m-1} = (2z F_m + e^{-z}) / (2m-1)`.
pub fn recurrence_backward(m: u32, f_m: XComplex, z: XComplex) -> Result<XComplex> {
    if m == 0 {
        return Err(Error::Domain("recurrence needs m >= 1"));
    }
    let e = (-z).exp()?;
    Ok((z * f_m * 2.0 + e) / (2.0 * m as f64 - 1.0))
}

// ---------------------------------------------------------------------
// routes

/// Relative rounding unit of a plain double-word sum.
const ROUND_UNIT: f64 = 1.2e-32;
/// Relative unit once double-word exponentials enter: their own error is
/// a few hundred rounding units from the squaring ladder.
const ROUND_UNIT_EXP: f64 = 2e-29;
/// Accept a route only with a margin below the public guarantee.
const ROUTE_EST: f64 = 1e-21;

const POWER_CUTOFF: f64 = 18.0;
const POWER_MAX_TERMS: usize = 512;

fn eval_routed(m: u32, z: XComplex) -> Result<(XComplex, usize, f64)> {
    let r = z.to_c64().norm();
    if r <= POWER_CUTOFF {
        return Ok(power_series_x(m, z));
    }
    let lau = laurent_x(m, z)?;
    if lau.2 <= ROUTE_EST {
        return Ok(lau);
    }
    let pow = power_series_x(m, z);
    if pow.2 <= ROUTE_EST {
        return Ok(pow);
    }
    let gau = gauss_x(m, z)?;
    // keep the best account even if all three overran
    Ok([lau, pow, gau]
        .into_iter()
        .min_by(|a, b| a.2.total_cmp(&b.2))
        .unwrap())
}

/// Ascending series: F_m(z) = (1/2) sum_n (-z)^n / (n! (a+n)).
/// The account charges the sum of term magnitudes; for oscillating terms
/// that is exactly the cancellation this series is known for.
fn power_series_x(m: u32, z: XComplex) -> (XComplex, usize, f64) {
    let a = m as f64 + 0.5;
    let neg_z = -z;
    let r = z.to_c64().norm();
    let mut p = XComplex::ONE;
    let mut sum = XComplex::from(XReal::ONE / (2.0 * a));
    let mut abs_sum = sum.to_c64().norm();
    let mut terms = 1usize;
    let mut trunc = 0.0f64;
    for n in 1..=POWER_MAX_TERMS {
        p = p * neg_z / (n as f64);
        let term = p / (2.0 * (a + n as f64));
        let t_norm = term.to_c64().norm();
        if n as f64 > r && t_norm < 1e-36 * sum.to_c64().norm().max(f64::MIN_POSITIVE) {
            trunc = t_norm;
            break;
        }
        sum = sum + term;
        abs_sum += t_norm;
        terms += 1;
        trunc = t_norm;
    }
    let denom = sum.to_c64().norm().max(f64::MIN_POSITIVE);
    let est = trunc / denom + ROUND_UNIT * abs_sum / denom;
    (sum, terms, est)
}

/// Descending series:
/// F_m(z) = Gamma(a)/(2 z^a) - (e^{-z}/(2z)) sum_n s_n,  s_n = s_{n-1}(a-n)/z,
/// truncated at its smallest term, n = floor(|z| + a).
fn laurent_x(m: u32, z: XComplex) -> Result<(XComplex, usize, f64)> {
    let a = m as f64 + 0.5;
    let r = z.to_c64().norm();
    let n_tr = (r + a).floor() as usize;
    let mut s = XComplex::ONE;
    let mut sum = XComplex::ONE;
    let mut abs_sum = 1.0f64;
    let mut min_term = 1.0f64;
    for n in 1..=n_tr {
        s = s * (a - n as f64) / z;
        let t_norm = s.to_c64().norm();
        min_term = min_term.min(t_norm);
        abs_sum += t_norm;
        sum = sum + s;
    }
    // z^{-a} = z^{-m} / sqrt(z) on the principal branch
    let head = XComplex::from(gamma_half(m)) / (z.powi(m as i32) * z.sqrt()) * 0.5;
    let prefactor = (-z).exp()? / (z * 2.0);
    let value = head - prefactor * sum;
    let denom = value.to_c64().norm().max(f64::MIN_POSITIVE);
    let pf_norm = prefactor.to_c64().norm();
    let head_norm = head.to_c64().norm();
    // the first omitted term is roughly the smallest kept one
    let est = 1.5 * pf_norm * min_term / denom
        + ROUND_UNIT_EXP * (head_norm + pf_norm * abs_sum) / denom;
    Ok((value, n_tr + 1, est))
}

/// Brute-force route: the defining integral under the 200-point rule.
fn gauss_x(m: u32, z: XComplex) -> Result<(XComplex, usize, f64)> {
    let mut sum = XComplex::ZERO;
    let mut abs_sum = 0.0;
    for &(t, w) in gauss_legendre_200() {
        let t2 = t * t;
        let term = (-(z * t2)).exp()? * (t2.powi(m as i32) * w);
        abs_sum += term.to_c64().norm();
        sum = sum + term;
    }
    let denom = sum.to_c64().norm().max(f64::MIN_POSITIVE);
    Ok((sum, gauss_legendre_200().len(), ROUND_UNIT_EXP * abs_sum / denom))
}

/// Gamma(m + 1/2) = sqrt(pi) (1/2)(3/2)...(m - 1/2).
fn gamma_half(m: u32) -> XReal {
    let mut g = XReal::SQRT_PI;
    for j in 1..=m {
        g = g * (j as f64 - 0.5);
    }
    g
}

// ---------------------------------------------------------------------
// the 200-point Gauss-Legendre rule on [0, 1]

const GL_N: usize = 200;

fn gauss_legendre_200() -> &'static [(XReal, XReal)] {
    static RULE: OnceLock<Vec<(XReal, XReal)>> = OnceLock::new();
    RULE.get_or_init(build_gl200)
}

#[doc(hidden)]
pub mod test_support {
    use super::*;

    /// The double-word Gauss-Legendre rule on [0, 1], exposed for
    /// independent cross-checks in tests.
    pub fn gl200() -> &'static [(XReal, XReal)] {
        gauss_legendre_200()
    }
}

/// Legendre value and derivative at `x` by the three-term recurrence.
fn legendre_pair(x: XReal) -> (XReal, XReal) {
    let mut p_prev = XReal::ONE;
    let mut p = x;
    for k in 1..GL_N {
        let k_f = k as f64;
        let next = (x * p * (2.0 * k_f + 1.0) - p_prev * k_f) / (k_f + 1.0);
        p_prev = p;
        p = next;
    }
    // P'_n(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
    let n = GL_N as f64;
    let d = (x * p - p_prev) * n / (x * x - 1.0);
    (p, d)
}

fn build_gl200() -> Vec<(XReal, XReal)> {
    let n = GL_N;
    let mut rule = Vec::with_capacity(n);
    let mut half: Vec<(XReal, XReal)> = Vec::with_capacity(n / 2);
    for k in 1..=n / 2 {
        // Chebyshev-like seed, then Newton in double, then double-word
        let mut seed =
            (std::f64::consts::PI * (k as f64 - 0.25) / (n as f64 + 0.5)).cos();
        for _ in 0..4 {
            let (p, d) = legendre_pair_f64(seed);
            seed -= p / d;
        }
        let mut x = XReal::from(seed);
        for _ in 0..3 {
            let (p, d) = legendre_pair(x);
            x = x - p / d;
        }
        let (_, d) = legendre_pair(x);
        let w = XReal::from(2.0) / ((XReal::ONE - x * x) * d * d);
        half.push((x, w));
    }
    // seeds above descend from +1; emit the full rule ascending on [0, 1]
    for &(x, w) in half.iter() {
        rule.push(((XReal::ONE - x) * 0.5, w * 0.5));
    }
    for &(x, w) in half.iter().rev() {
        rule.push(((XReal::ONE + x) * 0.5, w * 0.5));
    }
    rule
}

fn legendre_pair_f64(x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 1..GL_N {
        let k_f = k as f64;
        let next = ((2.0 * k_f + 1.0) * x * p - k_f * p_prev) / (k_f + 1.0);
        p_prev = p;
        p = next;
    }
    let n = GL_N as f64;
    (p, n * (x * p - p_prev) / (x * x - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xprec::dec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Reference values computed by adaptive quadrature in a independent
    /// arbitrary-precision system, 36 digits each.
    const FROZEN: &[(u32, f64, f64, &str, &str)] = &[
        (0, 1.0, 0.0, "0.746824132812427025399467436131853005", "0"),
        (0, 3.0, 4.0, "0.353773578532142352365696172754994884", "-0.181875806414356579319111097770613083"),
        (2, 10.0, -7.0, "0.0000557790243038185230818242738152680448", "0.00127354336848649911088136525409701257"),
        (5, -20.0, 5.0, "859811.705177531278083619250881569991", "9594874.40764674153943273856446522654"),
        (1, 0.0, 30.0, "-0.0183357936956908413228897319583359704", "0.000938938648053044729445082393808861678"),
        (0, -45.0, 0.0, "392623881740820944.172794018630334777", "0"),
        (10, 12.0, 9.0, "0.000000473280077402960055824144547564537258", "-0.000000364632350660697053782840897683342675"),
        (64, 0.0, 45.0, "0.0058676884916602379085433754309338496", "-0.00255839650614652500612997883933296422"),
        (3, 0.25, 0.0, "0.117730342930696410554526906787212824", "0"),
        (0, -1.0, 5.0, "0.00297030568420775045430235101869551873", "-0.202556745293572822836500111924408405"),
        (2, -30.0, 30.0, "-69894482290.5870286326259546043225806", "101006423303.543722308995115172208169"),
        (0, 45.0, 0.0, "0.132110909920200367111186323472554941", "0"),
        (0, 0.0, 36.0, "0.0907006708978640971593885005184282817", "-0.106409864885835062974234676823468716"),
        (1, -25.0, 25.0, "620491560.435700385281290752007293044", "794618049.882551785340037649067241794"),
        (0, 20.0, -20.0, "0.15395287015202555968479051341558654", "0.0637693667443131672914764867967835428"),
        (4, -5.0, 2.0, "-1.7777549874225283339787751759719487", "-7.91353562737940755632268756919333514"),
    ];

    fn assert_against(got: XComplex, re: &str, im: &str, tol: f64, what: &str) {
        let want = XComplex::new(dec::parse(re).unwrap(), dec::parse(im).unwrap());
        let diff = (got - want).to_c64().norm();
        let scale = want.to_c64().norm().max(f64::MIN_POSITIVE);
        assert!(
            diff <= tol * scale,
            "{what}: relative error {:.2e}",
            diff / scale
        );
    }

    #[test]
    fn frozen_values_certified() {
        // the contract is 20 digits; most points come back with 24+
        for &(m, re, im, fre, fim) in FROZEN {
            let v = eval(&EvalRequest::new(m, c(re, im))).unwrap();
            assert_against(v, fre, fim, 1e-20, &format!("m={m} z={re}+{im}i"));
        }
    }

    #[test]
    fn value_at_origin_is_exact() {
        for m in [0u32, 1, 5, 64] {
            let v = eval(&EvalRequest::new(m, c(0.0, 0.0))).unwrap();
            let want = 1.0 / (2.0 * m as f64 + 1.0);
            assert!((v.re.to_f64() - want).abs() <= 1e-30 * want);
            assert_eq!(v.im.to_f64(), 0.0);
        }
    }

    #[test]
    fn conjugate_reflection_is_bit_exact() {
        for &(m, re, im, ..) in FROZEN {
            let up = eval(&EvalRequest::new(m, c(re, im))).unwrap();
            let down = eval(&EvalRequest::new(m, c(re, -im))).unwrap();
            assert_eq!(up.conj().to_c64(), down.to_c64());
            assert_eq!(up.re.lo, down.re.lo);
            assert_eq!(up.im.lo, -down.im.lo);
        }
    }

    #[test]
    fn moment_one_matches_closed_form() {
        // int t e^{-z t^2} dt = (1 - e^{-z}) / (2z), the a = 1 slot
        let z = XComplex::from_f64(3.0, 4.0);
        let closed = (XComplex::ONE - (-z).exp().unwrap()) / (z * 2.0);
        let quad = eval_moment(1, c(3.0, 4.0)).unwrap();
        let rel = (quad - closed).to_c64().norm() / closed.to_c64().norm();
        assert!(rel <= 1e-25, "rel {rel:.2e}");
    }

    #[test]
    fn half_argument_moment_frozen() {
        // int t^5 e^{-(2-3i) t^2} dt, an odd moment no integer index hits
        let v = eval_moment(5, c(2.0, -3.0)).unwrap();
        assert_against(
            v,
            "-0.0137625752748299721038713420044810105",
            "0.0291139276080417580066038586439158951",
            1e-25,
            "moment 5",
        );
    }

    #[test]
    fn ladder_agrees_with_single_evals() {
        let z = c(-7.25, 13.0);
        let ladder = eval_ladder(12, z).unwrap();
        assert_eq!(ladder.len(), 13);
        for (m, lv) in ladder.iter().enumerate() {
            let single = eval(&EvalRequest::new(m as u32, z)).unwrap();
            let rel = (*lv - single).to_c64().norm() / single.to_c64().norm();
            assert!(rel <= 1e-24, "m={m} rel {rel:.2e}");
        }
    }

    #[test]
    fn recurrence_connects_neighbours() {
        let z = XComplex::from_f64(4.0, -3.0);
        for m in 1..=8u32 {
            let lo = eval(&EvalRequest::new(m - 1, c(4.0, -3.0))).unwrap();
            let hi = eval(&EvalRequest::new(m, c(4.0, -3.0))).unwrap();
            let up = recurrence_forward(m, lo, z).unwrap();
            let dn = recurrence_backward(m, hi, z).unwrap();
            assert!((up - hi).to_c64().norm() <= 1e-19 * hi.to_c64().norm());
            assert!((dn - lo).to_c64().norm() <= 1e-19 * lo.to_c64().norm());
        }
        assert!(recurrence_forward(0, XComplex::ONE, z).is_err());
        assert!(recurrence_forward(1, XComplex::ONE, XComplex::ZERO).is_err());
    }

    #[test]
    fn outside_guarantee_is_flagged_but_useful() {
        let err = eval(&EvalRequest::new(0, c(0.0, 46.0))).unwrap_err();
        match err {
            Error::Unreliable { value, est } => {
                assert!(est < 1e-6, "best effort should still be decent");
                assert!(value.norm() > 0.0);
            }
            other => panic!("expected Unreliable, got {other:?}"),
        }
        assert!(eval(&EvalRequest::new(M_MAX + 1, c(1.0, 1.0))).is_err());
    }

    #[test]
    fn branch_picker_prefers_cheap_side() {
        assert_eq!(series_branch(c(2.0, 1.0), 0.5, 10.0), Branch::PowerSeries);
        assert_eq!(series_branch(c(40.0, 0.0), 0.5, 10.0), Branch::Laurent);
        // a 25-digit target is below the descending floor at |z| = 40
        assert_eq!(series_branch(c(40.0, 0.0), 0.5, 25.0), Branch::PowerSeries);
        assert_eq!(series_branch(c(0.0, 0.0), 0.5, 10.0), Branch::PowerSeries);
    }

    #[test]
    fn digit_metric_behaves() {
        let reference = XComplex::from_f64(2.0, 0.0);
        assert_eq!(digits_of(c(2.0, 0.0), reference).d, 31.0);
        let two_digits = digits_of(c(2.02, 0.0), reference);
        assert!((two_digits.d - 2.0).abs() < 0.01);
        assert!(!two_digits.absolute);
        let junk = digits_of(c(-7.0, 4.0), reference);
        assert_eq!(junk.d, 0.0);
        // tiny reference flips to absolute mode
        let tiny = XComplex::from_f64(1e-260, 0.0);
        let abs = digits_of(c(1e-260, 1e-290), tiny);
        assert!(abs.absolute);
        assert!((abs.d - 290.0_f64.min(31.0)).abs() < 1e-9);
    }

    #[test]
    fn quadrature_rule_integrates_monomials() {
        let rule = gauss_legendre_200();
        assert_eq!(rule.len(), 200);
        for k in [0u32, 1, 2, 7, 40] {
            let mut s = XReal::ZERO;
            for &(t, w) in rule {
                s = s + t.powi(k as i32) * w;
            }
            let want = 1.0 / (k as f64 + 1.0);
            assert!(
                (s.to_f64() - want).abs() <= 1e-28 * want,
                "k={k}: got {}",
                s.to_f64()
            );
        }
        for pair in rule.windows(2) {
            assert!(pair[0].0 < pair[1].0, "abscissae must increase");
        }
    }
}

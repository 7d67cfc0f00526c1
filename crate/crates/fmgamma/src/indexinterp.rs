//! F_m at half-integer index, and interpolation across the index.
//!
//! When `a = m + 1/2` is a positive integer the descending series
//! terminates, leaving an elementary closed form.  Those exact values sit
//! between the integer indexes, which invites treating F as a polynomial
//! in `m`: sample it at the half-integers, fit, and read the fit off at
//! the integer target.  The fit can also trade sample rows for rows that
//! force the three-term recurrence between two integer indexes.
//!
//! Interpolation in the index is an experiment, not a workhorse; its
//! accuracy is modest and strongest near the middle of the sampled
//! range.  The closed form itself, though, is exact up to round-off and
//! doubles as an independent cross-check for the quadrature paths.

use num_complex::Complex64;

use crate::xprec::XComplex;
use crate::{Error, Result};

/// Closed form at index `m = a - 1/2`:
///
/// ```text
/// F = (a-1)!/(2 z^a)
///     - (e^{-z}/(2z)) [1 + sum_{n=1}^{a-1} (1-a)(2-a)...(n-a) / (-z)^n]
/// ```
///
/// The bracket is a terminating product sum; nothing here is truncated.
/// Accuracy is still limited by cancellation against the factorial head
/// when `|z|` is small and `a` is large.
pub fn half_integer_closed(a: u32, z: Complex64) -> Result<Complex64> {
    if a == 0 {
        return Err(Error::Domain("closed form needs a >= 1"));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("closed form needs z != 0"));
    }
    let af = a as f64;
    let mut fact = 1.0f64;
    for j in 2..a {
        fact *= j as f64;
    }
    let head = fact / (2.0 * z.powi(a as i32));
    let mut t = Complex64::new(1.0, 0.0);
    let mut sum = t;
    for n in 1..a {
        t *= (n as f64 - af) / -z;
        sum += t;
    }
    Ok(head - (-z).exp() / (2.0 * z) * sum)
}

/// Double-word twin of [`half_integer_closed`].
pub fn half_integer_closed_x(a: u32, z: XComplex) -> Result<XComplex> {
    if a == 0 {
        return Err(Error::Domain("closed form needs a >= 1"));
    }
    if z.re.hi == 0.0 && z.im.hi == 0.0 {
        return Err(Error::Domain("closed form needs z != 0"));
    }
    let af = a as f64;
    let mut fact = 1.0f64; // exact in binary64 for the small a used here
    for j in 2..a {
        fact *= j as f64;
    }
    let head = XComplex::from_f64(fact, 0.0) / z.powi(a as i32) * 0.5;
    let neg_z = -z;
    let mut t = XComplex::ONE;
    let mut sum = t;
    for n in 1..a {
        t = t * (n as f64 - af) / neg_z;
        sum = sum + t;
    }
    let pre = neg_z.exp()? / (z * 2.0);
    Ok(head - pre * sum)
}

/// The fitted system: rows constrain the polynomial `sum_j b_j m^j` at
/// the half-integer samples `m_k = k + 1/2`, or through recurrence
/// couplings.  Solving fills `b_j`.
pub struct IndexInterpSystem {
    pub n: usize,
    pub m_k: Vec<f64>,
    pub matrix: Vec<Vec<Complex64>>,
    pub rhs: Vec<Complex64>,
    pub b_j: Vec<Complex64>,
}

impl IndexInterpSystem {
    /// Plain sample system: row k is `(1, m_k, m_k^2, ..., m_k^N)` with
    /// the closed-form value on the right.
    pub fn build(n: usize, z: Complex64) -> Result<Self> {
        let mut m_k = Vec::with_capacity(n + 1);
        let mut matrix = Vec::with_capacity(n + 1);
        let mut rhs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mk = k as f64 + 0.5;
            m_k.push(mk);
            matrix.push(power_row(mk, n));
            rhs.push(half_integer_closed(k as u32 + 1, z)?);
        }
        Ok(IndexInterpSystem { n, m_k, matrix, rhs, b_j: Vec::new() })
    }

    /// Solves by partial-pivoted elimination, filling `b_j`.
    pub fn solve(&mut self) -> Result<()> {
        let n = self.n + 1;
        let mut a = self.matrix.clone();
        let mut r = self.rhs.clone();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
                .unwrap();
            if a[pivot][col].norm() == 0.0 {
                return Err(Error::Range("interpolation system is singular"));
            }
            a.swap(col, pivot);
            r.swap(col, pivot);
            for row in col + 1..n {
                let f = a[row][col] / a[col][col];
                for j in col..n {
                    let sub = f * a[col][j];
                    a[row][j] -= sub;
                }
                let sub = f * r[col];
                r[row] -= sub;
            }
        }
        let mut b = vec![Complex64::new(0.0, 0.0); n];
        for row in (0..n).rev() {
            let mut s = r[row];
            for j in row + 1..n {
                s -= a[row][j] * b[j];
            }
            b[row] = s / a[row][row];
        }
        self.b_j = b;
        Ok(())
    }

    /// Evaluates the fitted polynomial at index `m`.
    pub fn eval(&self, m: f64) -> Complex64 {
        let mut v = Complex64::new(0.0, 0.0);
        for &b in self.b_j.iter().rev() {
            v = v * m + b;
        }
        v
    }

    /// Largest relative row residual `|A_k . b - rhs_k| / |rhs_k|`.
    pub fn residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (row, &r) in self.matrix.iter().zip(&self.rhs) {
            let mut s = Complex64::new(0.0, 0.0);
            for (aij, &b) in row.iter().zip(&self.b_j) {
                s += aij * b;
            }
            worst = worst.max((s - r).norm() / r.norm().max(f64::MIN_POSITIVE));
        }
        worst
    }
}

fn power_row(mk: f64, n: usize) -> Vec<Complex64> {
    let mut row = Vec::with_capacity(n + 1);
    let mut p = 1.0;
    for _ in 0..=n {
        row.push(Complex64::new(p, 0.0));
        p *= mk;
    }
    row
}

/// Fits a degree-`n` polynomial through the half-integer closed forms
/// and evaluates it at the integer index `m`.
pub fn interp_eval(m: u32, z: Complex64, n: usize) -> Result<Complex64> {
    if m == 0 || m as usize > n {
        return Err(Error::Domain("target index must satisfy 1 <= m <= N"));
    }
    let mut sys = IndexInterpSystem::build(n, z)?;
    sys.solve()?;
    Ok(sys.eval(m as f64))
}

/// Like [`interp_eval`], but the sample rows named in `removals` are
/// replaced by recurrence rows: for a coupling `(m_v, m_u)` with
/// `m_u = m_v + 1` the row reads
///
/// ```text
/// sum_j [2z m_u^j - (2 m_u - 1) m_v^j] b_j = -e^{-z}
/// ```
///
/// so the fitted polynomial is forced to honor the three-term recurrence
/// between the two integer indexes instead of matching one sample.
pub fn interp_recurrence_constrained(
    m: u32,
    z: Complex64,
    n: usize,
    couplings: &[(u32, u32)],
    removals: &[usize],
) -> Result<Complex64> {
    if couplings.len() != removals.len() {
        return Err(Error::Domain("each coupling must replace exactly one sample row"));
    }
    if m == 0 || m as usize > n {
        return Err(Error::Domain("target index must satisfy 1 <= m <= N"));
    }
    let mut sys = IndexInterpSystem::build(n, z)?;
    let e = (-z).exp();
    for (&slot, &(m_v, m_u)) in removals.iter().zip(couplings) {
        if slot > n {
            return Err(Error::Domain("removal index outside the sample range"));
        }
        if m_u != m_v + 1 {
            return Err(Error::Domain("couplings must link consecutive indexes"));
        }
        let (mut pu, mut pv) = (1.0f64, 1.0f64);
        let mut row = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            row.push(2.0 * z * pu - Complex64::new((2.0 * m_u as f64 - 1.0) * pv, 0.0));
            pu *= m_u as f64;
            pv *= m_v as f64;
        }
        sys.matrix[slot] = row;
        sys.rhs[slot] = -e;
    }
    sys.solve()?;
    Ok(sys.eval(m as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn closed_form_simplest_case() {
        let v = half_integer_closed(1, c(1.0, 0.0)).unwrap();
        let want = (1.0 - (-1.0f64).exp()) / 2.0;
        assert!((v - c(want, 0.0)).norm() <= 1e-16 * want);
        assert!(half_integer_closed(1, c(0.0, 0.0)).is_err());
        assert!(half_integer_closed(0, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn closed_form_matches_quadrature_in_double_words() {
        // t^{2m} with m = a - 1/2 is the odd moment of order 2a - 1
        for (a, z) in [
            (1u32, c(0.5, -0.25)),
            (2, c(3.0, 4.0)),
            (3, c(-6.0, 2.0)),
            (4, c(12.0, 0.0)),
            (5, c(-10.0, 10.0)),
            (6, c(0.0, 20.0)),
        ] {
            let closed = half_integer_closed_x(a, XComplex::from(z)).unwrap();
            let quad = oracle::eval_moment(2 * a - 1, z).unwrap();
            let d = oracle::digits_of_x(closed, quad);
            assert!(d >= 25.0, "a={a}, z={z}: d={d:.2}");
        }
    }

    #[test]
    fn closed_form_obeys_the_recurrence() {
        // F at a = 4 from a = 3: 2z F_{7/2} = 6 F_{5/2} - e^{-z}
        let z = c(10.0, 0.0);
        let f3 = half_integer_closed(3, z).unwrap();
        let f4 = half_integer_closed(4, z).unwrap();
        let climbed = (6.0 * f3 - (-z).exp()) / (2.0 * z);
        let d = -((climbed - f4).norm() / f4.norm()).log10();
        assert!(d >= 13.0, "d={d:.2}");

        let z = c(5.0, 3.0);
        let f1 = half_integer_closed(1, z).unwrap();
        let f2 = half_integer_closed(2, z).unwrap();
        let climbed = (2.0 * f1 - (-z).exp()) / (2.0 * z);
        assert!((climbed - f2).norm() <= 1e-13 * f2.norm());
    }

    #[test]
    fn interpolation_reproduces_its_samples() {
        let mut sys = IndexInterpSystem::build(8, c(0.4, 0.3)).unwrap();
        sys.solve().unwrap();
        assert!(sys.residual() <= 1e-11, "residual {:.2e}", sys.residual());
        for (k, &mk) in sys.m_k.clone().iter().enumerate() {
            let v = sys.eval(mk);
            let want = sys.rhs[k];
            assert!((v - want).norm() <= 1e-11 * want.norm());
        }
    }

    #[test]
    fn interpolation_exact_on_polynomial_data() {
        let n = 6;
        let coefs: Vec<Complex64> = (0..=n)
            .map(|j| c(1.0 / (j as f64 + 1.0), 0.25 * j as f64))
            .collect();
        let mut sys = IndexInterpSystem::build(n, c(1.0, 0.0)).unwrap();
        for (k, row) in sys.matrix.iter().enumerate() {
            let mut v = c(0.0, 0.0);
            for (aij, &b) in row.iter().zip(&coefs) {
                v += aij * b;
            }
            sys.rhs[k] = v;
        }
        sys.solve().unwrap();
        let mut p = c(0.0, 0.0);
        for &b in coefs.iter().rev() {
            p = p * 3.0 + b;
        }
        assert!((sys.eval(3.0) - p).norm() <= 1e-12 * p.norm());
    }

    #[test]
    fn interpolation_lands_in_the_modest_band() {
        let z = c(0.8, 0.6);
        let v = interp_eval(1, z, 8).unwrap();
        let d = oracle::digits_of(v, oracle::eval(&oracle::EvalRequest::new(1, z)).unwrap()).d;
        assert!((1.0..=12.0).contains(&d), "d={d:.2}");
        assert!(interp_eval(0, z, 8).is_err());
        assert!(interp_eval(9, z, 8).is_err());
    }

    #[test]
    fn interpolation_favors_the_middle() {
        let z = c(-5.0, 0.0);
        let mid = interp_eval(2, z, 4).unwrap();
        let edge = interp_eval(4, z, 4).unwrap();
        let d_mid = oracle::digits_of(mid, oracle::eval(&oracle::EvalRequest::new(2, z)).unwrap()).d;
        let d_edge =
            oracle::digits_of(edge, oracle::eval(&oracle::EvalRequest::new(4, z)).unwrap()).d;
        assert!(d_mid > d_edge - 0.2, "middle {d_mid:.2}, edge {d_edge:.2}");
    }

    #[test]
    fn recurrence_rows_change_little() {
        let z = c(-5.0, 0.0);
        let plain = interp_eval(2, z, 4).unwrap();
        let constrained = interp_recurrence_constrained(2, z, 4, &[(1, 2)], &[4]).unwrap();
        let reference = oracle::eval(&oracle::EvalRequest::new(2, z)).unwrap();
        let d_plain = oracle::digits_of(plain, reference).d;
        let d_con = oracle::digits_of(constrained, reference).d;
        assert!(
            (d_con - d_plain).abs() <= 1.5,
            "plain {d_plain:.2}, constrained {d_con:.2}"
        );

        let twice =
            interp_recurrence_constrained(2, z, 4, &[(1, 2), (2, 3)], &[4, 3]).unwrap();
        let d_twice = oracle::digits_of(twice, reference).d;
        assert!(d_twice <= d_con + 0.5, "more rows should not keep helping");
    }

    #[test]
    fn zero_couplings_is_plain_interpolation() {
        let z = c(2.0, 1.0);
        let a = interp_eval(3, z, 5).unwrap();
        let b = interp_recurrence_constrained(3, z, 5, &[], &[]).unwrap();
        assert!((a - b).norm() <= 1e-14 * a.norm());
    }

    #[test]
    fn outputs_are_conjugate_symmetric() {
        let z = c(4.0, 2.5);
        let v = half_integer_closed(3, z).unwrap();
        let vc = half_integer_closed(3, z.conj()).unwrap();
        assert_eq!(v.conj(), vc);
        let i = interp_eval(2, z, 6).unwrap();
        let ic = interp_eval(2, z.conj(), 6).unwrap();
        assert_eq!(i.conj(), ic);
    }
}

//! Double-word reals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Unevaluated sum `hi + lo` of two doubles, `|lo| <= ulp(hi)/2`.
///
/// Results of the arithmetic below are accurate to a few units in the
/// 106th bit (relative ~1e-31) for operands away from overflow and
/// underflow.  Comparison is lexicographic on `(hi, lo)`, which matches
/// numeric order for normalized values.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct XReal {
    pub hi: f64,
    pub lo: f64,
}

/// `a + b` split into rounded sum and exact remainder.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    let e = (a - (s - v)) + (b - v);
    (s, e)
}

/// Like [`two_sum`] but requires `|a| >= |b|` or `a == 0`.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// `a * b` split into rounded product and exact remainder.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// `2^k` exactly, for `-1022 <= k <= 1023`.
#[inline]
pub(crate) fn exp2i(k: i32) -> f64 {
    debug_assert!((-1022..=1023).contains(&k));
    f64::from_bits(((1023 + k) as u64) << 52)
}

impl XReal {
    pub const ZERO: XReal = XReal { hi: 0.0, lo: 0.0 };
    pub const ONE: XReal = XReal { hi: 1.0, lo: 0.0 };
    pub const TEN: XReal = XReal { hi: 10.0, lo: 0.0 };
    pub const PI: XReal = XReal { hi: 3.141592653589793, lo: 1.2246467991473532e-16 };
    pub const TWO_PI: XReal = XReal { hi: 6.283185307179586, lo: 2.4492935982947064e-16 };
    pub const FRAC_PI_2: XReal = XReal { hi: 1.5707963267948966, lo: 6.123233995736766e-17 };
    pub const LN_2: XReal = XReal { hi: 0.6931471805599453, lo: 2.3190468138462996e-17 };
    pub const SQRT_PI: XReal = XReal { hi: 1.772453850905516, lo: -7.666586499825799e-17 };

    /// Builds from parts the caller already knows to be normalized.
    #[inline]
    pub const fn new(hi: f64, lo: f64) -> Self {
        XReal { hi, lo }
    }

    /// Normalizes an arbitrary pair of doubles.
    #[inline]
    pub fn from_sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        XReal { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.hi.is_sign_negative()) {
            -self
        } else {
            self
        }
    }

    /// Square root by one Newton correction on the double-precision seed.
    /// Negative input yields NaN, as for `f64::sqrt`.
    pub fn sqrt(self) -> Self {
        if self.hi == 0.0 {
            return XReal::ZERO;
        }
        if self.hi < 0.0 {
            return XReal::new(f64::NAN, 0.0);
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let (p, e) = two_prod(ax, ax);
        let d = (self - XReal::new(p, e)).hi * (x * 0.5);
        XReal::from_sum(ax, d)
    }

    /// `e^self` for `|self| <= ~708`.  Callers that can see larger
    /// arguments range-check first; see `XComplex::exp`.
    pub fn exp(self) -> Self {
        if self.hi == 0.0 {
            return XReal::ONE;
        }
        // e^x = 2^k e^r with |r| <= ln2/2, then the series on r/2^9.
        let k = (self.hi / Self::LN_2.hi).round();
        let r = (self - Self::LN_2 * k) * exp2i(-9);
        let mut sum = XReal::ONE + r;
        let mut term = r;
        let mut n = 2.0;
        loop {
            term = term * r / n;
            sum = sum + term;
            if term.hi.abs() < 1e-35 {
                break;
            }
            n += 1.0;
        }
        for _ in 0..9 {
            sum = sum * sum;
        }
        sum * exp2i(k as i32)
    }

    /// Simultaneous sine and cosine.  Argument reduction is modulo the
    /// double-word 2*pi, so absolute accuracy degrades by ~|self| ulps;
    /// fine for the |Im z| <= a-few-hundred range this crate uses.
    pub fn sin_cos(self) -> (Self, Self) {
        let turns = (self.hi / Self::TWO_PI.hi).round();
        let t = self - Self::TWO_PI * turns;
        let q = (t.hi / Self::FRAC_PI_2.hi).round();
        let r = t - Self::FRAC_PI_2 * q;
        let (s, c) = (sin_taylor(r), cos_taylor(r));
        match (q as i32).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    /// Integer power by binary squaring; `n < 0` goes through a reciprocal.
    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return XReal::ONE;
        }
        let mut base = if n < 0 { XReal::ONE / self } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = XReal::ONE;
        loop {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e == 0 {
                return acc;
            }
            base = base * base;
        }
    }

    pub fn recip(self) -> Self {
        XReal::ONE / self
    }
}

/// Sine on `|r| <= pi/4 + eps`.
fn sin_taylor(r: XReal) -> XReal {
    if r.hi == 0.0 {
        return r;
    }
    let r2 = r * r;
    let mut term = r;
    let mut sum = r;
    let mut n = 1.0;
    loop {
        term = -(term * r2) / ((n + 1.0) * (n + 2.0));
        sum = sum + term;
        n += 2.0;
        if term.hi.abs() < 1e-34 * r.hi.abs() {
            return sum;
        }
    }
}

/// Cosine on `|r| <= pi/4 + eps`.
fn cos_taylor(r: XReal) -> XReal {
    let r2 = r * r;
    let mut term = -(r2 * 0.5);
    let mut sum = XReal::ONE + term;
    let mut n = 2.0;
    loop {
        if term.hi.abs() < 1e-34 {
            return sum;
        }
        term = -(term * r2) / ((n + 1.0) * (n + 2.0));
        sum = sum + term;
        n += 2.0;
    }
}

impl From<f64> for XReal {
    #[inline]
    fn from(x: f64) -> Self {
        XReal { hi: x, lo: 0.0 }
    }
}

impl Neg for XReal {
    type Output = XReal;
    #[inline]
    fn neg(self) -> XReal {
        XReal { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for XReal {
    type Output = XReal;
    #[inline]
    fn add(self, rhs: XReal) -> XReal {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        XReal { hi, lo }
    }
}

impl Add<f64> for XReal {
    type Output = XReal;
    #[inline]
    fn add(self, rhs: f64) -> XReal {
        let (s1, s2) = two_sum(self.hi, rhs);
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo);
        XReal { hi, lo }
    }
}

impl Sub for XReal {
    type Output = XReal;
    #[inline]
    fn sub(self, rhs: XReal) -> XReal {
        self + (-rhs)
    }
}

impl Sub<f64> for XReal {
    type Output = XReal;
    #[inline]
    fn sub(self, rhs: f64) -> XReal {
        self + (-rhs)
    }
}

impl Mul for XReal {
    type Output = XReal;
    #[inline]
    fn mul(self, rhs: XReal) -> XReal {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        XReal { hi, lo }
    }
}

impl Mul<f64> for XReal {
    type Output = XReal;
    #[inline]
    fn mul(self, rhs: f64) -> XReal {
        let (p, e) = two_prod(self.hi, rhs);
        let (hi, lo) = quick_two_sum(p, e + self.lo * rhs);
        XReal { hi, lo }
    }
}

impl Div for XReal {
    type Output = XReal;
    #[inline]
    fn div(self, rhs: XReal) -> XReal {
        // Long division: three quotient digits in double precision.
        let q1 = self.hi / rhs.hi;
        let mut r = self - rhs * q1;
        let q2 = r.hi / rhs.hi;
        r = r - rhs * q2;
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        XReal { hi, lo } + q3
    }
}

impl Div<f64> for XReal {
    type Output = XReal;
    #[inline]
    fn div(self, rhs: f64) -> XReal {
        self / XReal::from(rhs)
    }
}

impl PartialOrd for XReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl fmt::Display for XReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::dec::format_sci(*self, 31))
    }
}

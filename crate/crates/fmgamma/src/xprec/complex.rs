//! Double-word complex values.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use super::real::XReal;
use crate::{Error, Result};

/// Largest |Re z| accepted by [`XComplex::exp`].  Keeps e^|x| clear of
/// overflow and of the subnormal range where double-word splits degrade.
pub const EXP_RE_LIMIT: f64 = 700.0;

/// Complex number with double-word components.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct XComplex {
    pub re: XReal,
    pub im: XReal,
}

impl XComplex {
    pub const ZERO: XComplex = XComplex { re: XReal::ZERO, im: XReal::ZERO };
    pub const ONE: XComplex = XComplex { re: XReal::ONE, im: XReal::ZERO };

    #[inline]
    pub const fn new(re: XReal, im: XReal) -> Self {
        XComplex { re, im }
    }

    #[inline]
    pub fn from_f64(re: f64, im: f64) -> Self {
        XComplex { re: XReal::from(re), im: XReal::from(im) }
    }

    #[inline]
    pub fn conj(self) -> Self {
        XComplex { re: self.re, im: -self.im }
    }

    #[inline]
    pub fn abs_sqr(self) -> XReal {
        self.re * self.re + self.im * self.im
    }

    #[inline]
    pub fn abs(self) -> XReal {
        self.abs_sqr().sqrt()
    }

    #[inline]
    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Principal square root.  On the negative real axis the result sits on
    /// the +i side unless `im` is a negative zero.
    pub fn sqrt(self) -> Self {
        if self.re.hi == 0.0 && self.im.hi == 0.0 {
            return XComplex::ZERO;
        }
        let r = self.abs();
        if self.re.hi >= 0.0 {
            let t = ((r + self.re) * 0.5).sqrt();
            XComplex { re: t, im: self.im / (t * 2.0) }
        } else {
            let u = ((r - self.re) * 0.5).sqrt();
            let neg_im = self.im.hi < 0.0 || (self.im.hi == 0.0 && self.im.hi.is_sign_negative());
            XComplex {
                re: self.im.abs() / (u * 2.0),
                im: if neg_im { -u } else { u },
            }
        }
    }

    /// `e^self`, range-checked: `|Re self|` beyond [`EXP_RE_LIMIT`] (or NaN)
    /// is a range error rather than a silent infinity or zero.
    pub fn exp(self) -> Result<Self> {
        if !(self.re.hi.abs() <= EXP_RE_LIMIT) {
            return Err(Error::Range("exp: |Re z| exceeds 700"));
        }
        let g = self.re.exp();
        let (s, c) = self.im.sin_cos();
        Ok(XComplex { re: g * c, im: g * s })
    }

    /// Integer power by binary squaring; `n < 0` goes through a reciprocal.
    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return XComplex::ONE;
        }
        let mut base = if n < 0 { XComplex::ONE / self } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = XComplex::ONE;
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
}

impl From<Complex64> for XComplex {
    #[inline]
    fn from(z: Complex64) -> Self {
        XComplex::from_f64(z.re, z.im)
    }
}

impl From<XReal> for XComplex {
    #[inline]
    fn from(x: XReal) -> Self {
        XComplex { re: x, im: XReal::ZERO }
    }
}

impl Neg for XComplex {
    type Output = XComplex;
    #[inline]
    fn neg(self) -> XComplex {
        XComplex { re: -self.re, im: -self.im }
    }
}

impl Add for XComplex {
    type Output = XComplex;
    #[inline]
    fn add(self, rhs: XComplex) -> XComplex {
        XComplex { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for XComplex {
    type Output = XComplex;
    #[inline]
    fn sub(self, rhs: XComplex) -> XComplex {
        XComplex { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for XComplex {
    type Output = XComplex;
    #[inline]
    fn mul(self, rhs: XComplex) -> XComplex {
        XComplex {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl Mul<XReal> for XComplex {
    type Output = XComplex;
    #[inline]
    fn mul(self, rhs: XReal) -> XComplex {
        XComplex { re: self.re * rhs, im: self.im * rhs }
    }
}

impl Mul<f64> for XComplex {
    type Output = XComplex;
    #[inline]
    fn mul(self, rhs: f64) -> XComplex {
        XComplex { re: self.re * rhs, im: self.im * rhs }
    }
}

impl Div for XComplex {
    type Output = XComplex;
    fn div(self, rhs: XComplex) -> XComplex {
        // Smith's rule: scale by the larger component to avoid premature
        // overflow in |rhs|^2.
        if rhs.re.hi.abs() >= rhs.im.hi.abs() {
            let r = rhs.im / rhs.re;
            let den = rhs.re + rhs.im * r;
            XComplex {
                re: (self.re + self.im * r) / den,
                im: (self.im - self.re * r) / den,
            }
        } else {
            let r = rhs.re / rhs.im;
            let den = rhs.re * r + rhs.im;
            XComplex {
                re: (self.re * r + self.im) / den,
                im: (self.im * r - self.re) / den,
            }
        }
    }
}

impl Div<XReal> for XComplex {
    type Output = XComplex;
    #[inline]
    fn div(self, rhs: XReal) -> XComplex {
        XComplex { re: self.re / rhs, im: self.im / rhs }
    }
}

impl Div<f64> for XComplex {
    type Output = XComplex;
    #[inline]
    fn div(self, rhs: f64) -> XComplex {
        XComplex { re: self.re / rhs, im: self.im / rhs }
    }
}

//! Decimal text for double-word reals.
//!
//! Grid files store 25 significant digits per component.  Formatting pulls
//! decimal digits out of the scaled value one at a time; parsing pushes
//! them back in the same way.  Both directions are good to ~1e-31 relative,
//! far inside the 5e-25 half-gap of the stored format, so formatting a
//! parsed string reproduces it byte for byte.

use super::real::XReal;
use crate::{Error, Result};

/// `x * 10^e` in steps small enough that no intermediate power of ten
/// overflows, even when `x` and the result sit near opposite ends of the
/// binary64 range.
fn scale10(x: XReal, e: i32) -> XReal {
    let mut v = x;
    let mut e = e;
    while e > 290 {
        v = v * XReal::TEN.powi(290);
        e -= 290;
    }
    while e < -290 {
        v = v * XReal::TEN.powi(-290);
        e += 290;
    }
    v * XReal::TEN.powi(e)
}

/// Scientific notation with `digits` significant digits, e.g.
/// `-1.234567890123456789012345e-3`.  Rounds half away from zero.
pub fn format_sci(x: XReal, digits: usize) -> String {
    assert!((1..=33).contains(&digits), "digits out of range");
    if x.hi == 0.0 {
        return zero_string(digits);
    }
    let neg = x.hi < 0.0;
    let ax = x.abs();
    let mut e = ax.hi.log10().floor() as i32;
    let mut r = scale10(ax, -e);
    while r.hi >= 10.0 {
        r = r / 10.0;
        e += 1;
    }
    while r.hi < 1.0 {
        r = r * 10.0;
        e -= 1;
    }

    // two guard digits: one for rounding, one spent if the leading
    // digit collapses to zero during the fix-up sweep
    let nd = digits + 2;
    let mut dig = vec![0i32; nd];
    for d in dig.iter_mut() {
        let k = r.hi as i32;
        *d = k;
        r = (r - k as f64) * 10.0;
    }
    // the low word can push an extracted digit to -1 or 10
    for i in (1..nd).rev() {
        if dig[i] < 0 {
            dig[i] += 10;
            dig[i - 1] -= 1;
        } else if dig[i] > 9 {
            dig[i] -= 10;
            dig[i - 1] += 1;
        }
    }
    if dig[0] == 10 {
        dig.insert(0, 1);
        dig[1] = 0;
        e += 1;
    } else if dig[0] == 0 {
        dig.remove(0);
        e -= 1;
    }

    let mut carry = dig[digits] >= 5;
    dig.truncate(digits);
    if carry {
        for d in dig.iter_mut().rev() {
            *d += 1;
            if *d <= 9 {
                carry = false;
                break;
            }
            *d = 0;
        }
        if carry {
            dig[0] = 1;
            e += 1;
        }
    }

    let mut s = String::with_capacity(digits + 8);
    if neg {
        s.push('-');
    }
    s.push(char::from(b'0' + dig[0] as u8));
    if digits > 1 {
        s.push('.');
        for &d in &dig[1..] {
            s.push(char::from(b'0' + d as u8));
        }
    }
    s.push('e');
    s.push_str(&e.to_string());
    s
}

fn zero_string(digits: usize) -> String {
    let mut s = String::from("0");
    if digits > 1 {
        s.push('.');
        s.extend(std::iter::repeat('0').take(digits - 1));
    }
    s.push_str("e0");
    s
}

/// Parses `[+-]ddd[.ddd][eE[+-]ddd]` into a double-word real.
pub fn parse(s: &str) -> Result<XReal> {
    let t = s.trim();
    let bytes = t.as_bytes();
    let mut i = 0;
    let mut neg = false;
    match bytes.first() {
        Some(b'+') => i = 1,
        Some(b'-') => {
            neg = true;
            i = 1;
        }
        _ => {}
    }
    let mut r = XReal::ZERO;
    let mut seen_digit = false;
    let mut frac: Option<i32> = None;
    let mut exp10: i32 = 0;
    while i < bytes.len() {
        match bytes[i] {
            d @ b'0'..=b'9' => {
                r = r * 10.0 + f64::from(d - b'0');
                if let Some(f) = frac.as_mut() {
                    *f += 1;
                }
                seen_digit = true;
            }
            b'.' if frac.is_none() => frac = Some(0),
            b'e' | b'E' if seen_digit => {
                exp10 = t[i + 1..]
                    .parse::<i32>()
                    .map_err(|_| Error::Format(format!("bad exponent in number {t:?}")))?;
                i = bytes.len();
                continue;
            }
            _ => return Err(Error::Format(format!("bad number {t:?}"))),
        }
        i += 1;
    }
    if !seen_digit {
        return Err(Error::Format(format!("bad number {t:?}")));
    }
    let mut v = scale10(r, exp10 - frac.unwrap_or(0));
    if neg {
        v = -v;
    }
    Ok(v)
}

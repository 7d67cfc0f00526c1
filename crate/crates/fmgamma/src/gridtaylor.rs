//! Taylor evaluation off a precomputed grid of derivative tables.
//!
//! Differentiating under the integral sign only shifts the index,
//! `d/dz F_m = -F_{m+1}`, so a single ladder `F_0(z0) .. F_J(z0)` stored at
//! a node `z0` serves every order `m` and every Taylor term at once:
//!
//! ```text
//! F_m(z0 + eps) = sum_{n >= 0} F_{m+n}(z0) (-eps)^n / n!
//! ```
//!
//! [`build_grid`] fills a rectangular lattice `z0 = k s + i l s` with
//! extended-precision ladders, [`eval`] expands off the nearest node, and
//! [`save_grid`]/[`load_grid`] move grids through a line-oriented text
//! format with a trailing checksum.  Outside the covered rectangle (plus
//! half a stride of margin) the expansion parameter would keep growing, so
//! [`eval`] hands over to the descending series with a converging factor.
//! Only the closed upper half-plane is stored; conjugate reflection
//! supplies `Im z < 0`.

use std::io::{self, Write as _};
use std::path::Path;
use std::{fs, fmt::Write as _};

use num_complex::Complex64;

use crate::series;
use crate::xprec::{dec, XComplex, XReal};
use crate::{Error, Result, SeriesResult};

/// Real range covered by the production lattice.
pub const RE_COVER: (f64, f64) = (-33.0, 18.0);
/// Top of the imaginary range covered by the production lattice.
pub const IM_COVER: f64 = 36.0;
/// Significant digits per component in the stored text format.  The
/// ladders are trusted to 20 digits; the headroom avoids double rounding.
pub const STORED_DIGITS: u32 = 25;

/// Relative error the grid builder inherits from the reference evaluator.
const LADDER_TRUST: f64 = 1e-20;
/// First line of every grid file.
const MAGIC: &str = "FMGRID/1";

/// Lattice geometry handed to [`build_grid`]: nodes `z0 = k s + i l s`
/// for `k_min <= k <= k_max`, `0 <= l <= l_max`, each holding
/// `F_0 .. F_{j_max}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub s: f64,
    pub k_min: i32,
    pub k_max: i32,
    pub l_max: i32,
    pub j_max: u32,
}

impl GridSpec {
    /// The coarsest lattice covering `Re z` in [`RE_COVER`] and
    /// `0 <= Im z <=` [`IM_COVER`] at stride `s`.
    pub fn spanning(s: f64, j_max: u32) -> Self {
        GridSpec {
            s,
            k_min: (RE_COVER.0 / s).floor() as i32,
            k_max: (RE_COVER.1 / s).ceil() as i32,
            l_max: (IM_COVER / s).ceil() as i32,
            j_max,
        }
    }

    pub fn node_count(&self) -> usize {
        let nk = (self.k_max - self.k_min) as usize + 1;
        let nl = self.l_max as usize + 1;
        nk * nl
    }

    fn validate(&self) -> Result<()> {
        if !(self.s > 0.0 && self.s.is_finite()) {
            return Err(Error::Domain("grid stride must be positive and finite"));
        }
        if self.k_min > self.k_max || self.l_max < 0 {
            return Err(Error::Domain("grid node ranges are empty"));
        }
        if self.j_max > 64 {
            return Err(Error::Domain("stored ladder index is capped at 64"));
        }
        if self.node_count() > 1_000_000 {
            return Err(Error::Domain("grid would exceed one million nodes"));
        }
        Ok(())
    }
}

/// Stride 3 over the production rectangle, ladders up to `j = 30`.
impl Default for GridSpec {
    fn default() -> Self {
        GridSpec::spanning(3.0, 30)
    }
}

/// An immutable table of ladders `F_0(z0) .. F_{j_max}(z0)` on the lattice
/// described by its geometry fields.  `digits` tags the precision of the
/// text format the grid was read from or will be written to.
#[derive(Debug, Clone)]
pub struct TaylorGrid {
    pub s: f64,
    pub k_min: i32,
    pub k_max: i32,
    pub l_max: i32,
    pub j_max: u32,
    pub digits: u32,
    values: Vec<XComplex>,
}

impl TaylorGrid {
    pub fn spec(&self) -> GridSpec {
        GridSpec {
            s: self.s,
            k_min: self.k_min,
            k_max: self.k_max,
            l_max: self.l_max,
            j_max: self.j_max,
        }
    }

    pub fn node_z0(&self, k: i32, l: i32) -> Complex64 {
        Complex64::new(k as f64 * self.s, l as f64 * self.s)
    }

    /// The ladder stored at node `(k, l)`, indexed by `j`.
    pub fn node_values(&self, k: i32, l: i32) -> &[XComplex] {
        let nk = (self.k_max - self.k_min) as usize + 1;
        let node = l as usize * nk + (k - self.k_min) as usize;
        let w = self.j_max as usize + 1;
        &self.values[node * w..(node + 1) * w]
    }
}

/// Fills the lattice with reference ladders, one shared-kernel quadrature
/// sweep per node.  Nodes the reference evaluator refuses are collected
/// and reported together.
pub fn build_grid(spec: &GridSpec) -> Result<TaylorGrid> {
    spec.validate()?;
    let mut values = Vec::with_capacity(spec.node_count() * (spec.j_max as usize + 1));
    let mut refused = Vec::new();
    for l in 0..=spec.l_max {
        for k in spec.k_min..=spec.k_max {
            let z0 = Complex64::new(k as f64 * spec.s, l as f64 * spec.s);
            match crate::oracle::eval_ladder(spec.j_max, z0) {
                Ok(ladder) => values.extend(ladder),
                Err(e) => refused.push(format!("({k}, {l}): {e}")),
            }
        }
    }
    if !refused.is_empty() {
        let mut msg = format!("{} node(s) outside the reference domain: ", refused.len());
        msg.push_str(&refused[..refused.len().min(8)].join("; "));
        if refused.len() > 8 {
            let _ = write!(msg, "; and {} more", refused.len() - 8);
        }
        return Err(Error::Build(msg));
    }
    Ok(TaylorGrid {
        s: spec.s,
        k_min: spec.k_min,
        k_max: spec.k_max,
        l_max: spec.l_max,
        j_max: spec.j_max,
        digits: STORED_DIGITS,
        values,
    })
}

// ---------------------------------------------------------------------
// file format

const CRC_TABLE: [u32; 256] = crc_table();

const fn crc_table() -> [u32; 256] {
    let mut t = [0u32; 256];
    let mut i = 0;
    while i < 256 {
        let mut c = i as u32;
        let mut b = 0;
        while b < 8 {
            c = if c & 1 != 0 { 0xedb8_8320 ^ (c >> 1) } else { c >> 1 };
            b += 1;
        }
        t[i] = c;
        i += 1;
    }
    t
}

fn crc32(bytes: &[u8]) -> u32 {
    let mut c = !0u32;
    for &b in bytes {
        c = CRC_TABLE[((c ^ b as u32) & 0xff) as usize] ^ (c >> 8);
    }
    !c
}

fn render_grid(grid: &TaylorGrid) -> String {
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    let _ = writeln!(
        out,
        "{} {} {} {} {} {}",
        grid.s, grid.k_min, grid.k_max, grid.l_max, grid.j_max, grid.digits
    );
    for l in 0..=grid.l_max {
        for k in grid.k_min..=grid.k_max {
            let _ = write!(out, "{k} {l}");
            for v in grid.node_values(k, l) {
                out.push(' ');
                out.push_str(&dec::format_sci(v.re, grid.digits as usize));
                out.push(' ');
                out.push_str(&dec::format_sci(v.im, grid.digits as usize));
            }
            out.push('\n');
        }
    }
    let _ = writeln!(out, "CRC32 {:08x}", crc32(out.as_bytes()));
    out
}

/// Writes the grid in the text format described in the module docs.
pub fn save_grid(grid: &TaylorGrid, path: impl AsRef<Path>) -> Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(render_grid(grid).as_bytes())?;
    Ok(())
}

/// Reads a grid back, verifying the checksum and then re-deriving the
/// index recurrence at every node as an end-to-end consistency check of
/// the stored digits.
pub fn load_grid(path: impl AsRef<Path>) -> Result<TaylorGrid> {
    let text = fs::read_to_string(path).map_err(|e| {
        if e.kind() == io::ErrorKind::InvalidData {
            Error::Format("grid file is not text".into())
        } else {
            Error::Io(e)
        }
    })?;
    parse_grid(&text)
}

fn parse_grid(text: &str) -> Result<TaylorGrid> {
    let fail = |what: &str| Error::Format(format!("grid file: {what}"));
    let stripped = text
        .strip_suffix('\n')
        .ok_or_else(|| fail("missing final newline (empty or truncated file)"))?;
    let nl = stripped
        .rfind('\n')
        .ok_or_else(|| fail("missing checksum line"))?;
    let stated = stripped[nl + 1..]
        .strip_prefix("CRC32 ")
        .and_then(|h| u32::from_str_radix(h, 16).ok())
        .ok_or_else(|| fail("malformed checksum line"))?;
    let content = &text[..=nl];
    let actual = crc32(content.as_bytes());
    if actual != stated {
        return Err(fail(&format!("checksum mismatch (stated {stated:08x}, computed {actual:08x})")));
    }

    let mut lines = content.lines();
    let magic = lines.next().ok_or_else(|| fail("missing magic line"))?;
    if magic != MAGIC {
        return Err(fail(&format!("unknown format {magic:?} (expected {MAGIC:?})")));
    }
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| fail("missing header line"))?
        .split_whitespace()
        .collect();
    if header.len() != 6 {
        return Err(fail("header needs exactly six fields"));
    }
    let s: f64 = header[0].parse().map_err(|_| fail("bad stride"))?;
    let k_min: i32 = header[1].parse().map_err(|_| fail("bad k_min"))?;
    let k_max: i32 = header[2].parse().map_err(|_| fail("bad k_max"))?;
    let l_max: i32 = header[3].parse().map_err(|_| fail("bad l_max"))?;
    let j_max: u32 = header[4].parse().map_err(|_| fail("bad ladder top"))?;
    let digits: u32 = header[5].parse().map_err(|_| fail("bad digit count"))?;
    let spec = GridSpec { s, k_min, k_max, l_max, j_max };
    spec.validate()
        .map_err(|e| fail(&format!("header out of range ({e})")))?;
    if !(5..=33).contains(&digits) {
        return Err(fail("stored digit count out of range"));
    }

    let w = j_max as usize + 1;
    let mut values = Vec::with_capacity(spec.node_count() * w);
    for l in 0..=l_max {
        for k in k_min..=k_max {
            let line = lines
                .next()
                .ok_or_else(|| fail(&format!("missing node line for ({k}, {l})")))?;
            let mut tok = line.split_whitespace();
            let fk: i32 = tok
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| fail("bad node index"))?;
            let fl: i32 = tok
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| fail("bad node index"))?;
            if (fk, fl) != (k, l) {
                return Err(fail(&format!(
                    "node order mismatch: found ({fk}, {fl}) where ({k}, {l}) belongs"
                )));
            }
            for _ in 0..w {
                let re = tok.next().ok_or_else(|| fail("short node line"))?;
                let im = tok.next().ok_or_else(|| fail("short node line"))?;
                values.push(XComplex::new(dec::parse(re)?, dec::parse(im)?));
            }
            if tok.next().is_some() {
                return Err(fail(&format!("trailing values on node line ({k}, {l})")));
            }
        }
    }
    if lines.next().is_some() {
        return Err(fail("trailing lines after the last node"));
    }

    let grid = TaylorGrid { s, k_min, k_max, l_max, j_max, digits, values };
    validate_ladders(&grid)?;
    Ok(grid)
}

/// Every stored ladder must satisfy `2 z0 F_j = (2j-1) F_{j-1} - exp(-z0)`
/// to 1e-18 relative; at `z0 = 0` the values are pinned directly to
/// `1/(2j+1)`.  A single corrupted digit anywhere above that level breaks
/// the chain.
fn validate_ladders(grid: &TaylorGrid) -> Result<()> {
    for l in 0..=grid.l_max {
        for k in grid.k_min..=grid.k_max {
            let f = grid.node_values(k, l);
            let complain = |j: u32, r: f64| {
                Error::Format(format!(
                    "grid file: stored ladder at node ({k}, {l}) breaks the index \
                     recurrence at j = {j} (residual {r:.2e})"
                ))
            };
            if (k, l) == (0, 0) {
                for (j, v) in f.iter().enumerate() {
                    let exact = XReal::from(2.0 * j as f64 + 1.0).recip();
                    let r = (*v - XComplex::from(exact)).abs().to_f64() / exact.to_f64();
                    if r > 1e-18 {
                        return Err(complain(j as u32, r));
                    }
                }
                continue;
            }
            let z0 = XComplex::from(grid.node_z0(k, l));
            let e = (-z0).exp()?;
            for j in 1..=grid.j_max as usize {
                let lhs = z0 * f[j] * 2.0;
                let rhs = f[j - 1] * (2.0 * j as f64 - 1.0) - e;
                let scale = lhs
                    .abs()
                    .to_f64()
                    .max(f[j - 1].abs().to_f64() * (2.0 * j as f64 - 1.0))
                    .max(e.abs().to_f64());
                let r = (lhs - rhs).abs().to_f64() / scale;
                if r > 1e-18 {
                    return Err(complain(j as u32, r));
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------
// evaluation

/// Present when the requested digits were met inside the stored ladder.
struct Expansion {
    value: XComplex,
    terms: usize,
    est: f64,
    reached: bool,
}

/// Closed margin of half a stride around the node rectangle; inside it
/// the nearest node is never farther than `s/sqrt(2)`.
fn in_margin(grid: &TaylorGrid, zw: Complex64) -> bool {
    let h = 0.5 * grid.s;
    zw.re >= grid.k_min as f64 * grid.s - h
        && zw.re <= grid.k_max as f64 * grid.s + h
        && zw.im <= grid.l_max as f64 * grid.s + h
}

/// Ties go to the node with smaller `|Im z0|`, then smaller `Re z0`, so
/// term counts are reproducible on cell midlines.
fn nearest_node(grid: &TaylorGrid, zw: Complex64) -> (i32, i32) {
    let pair = |x: f64, lo: i32, hi: i32| -> [i32; 2] {
        let f = (x / grid.s).floor() as i32;
        [f.clamp(lo, hi), (f + 1).clamp(lo, hi)]
    };
    let mut best: Option<(f64, i32, i32)> = None;
    for l in pair(zw.im, 0, grid.l_max) {
        for k in pair(zw.re, grid.k_min, grid.k_max) {
            let dr = zw.re - k as f64 * grid.s;
            let di = zw.im - l as f64 * grid.s;
            let d2 = dr * dr + di * di;
            let better = match best {
                None => true,
                Some((b2, bk, bl)) => d2 < b2 || (d2 == b2 && (l < bl || (l == bl && k < bk))),
            };
            if better {
                best = Some((d2, k, l));
            }
        }
    }
    let (_, k, l) = best.unwrap();
    (k, l)
}

/// Taylor expansion off the nearest node, in double-word arithmetic.
/// Terms are accumulated until one falls to `10^(-target_d)` of the
/// running sum; that final term still improves the value but is not
/// counted, so `terms` matches the highest order that mattered.  The
/// omitted tail is an order of magnitude below the stopping term, so
/// the target still comes out with a digit to spare.
fn expand(grid: &TaylorGrid, m: u32, zw: Complex64, target_d: f64) -> Expansion {
    let (k, l) = nearest_node(grid, zw);
    let f = grid.node_values(k, l);
    let eps = XComplex::from(zw) - XComplex::from(grid.node_z0(k, l));
    let store_unit = 10f64.powi(1 - grid.digits as i32) + LADDER_TRUST;
    if eps.abs_sqr().to_f64() == 0.0 {
        return Expansion { value: f[m as usize], terms: 1, est: store_unit, reached: true };
    }
    let thr = 10f64.powf(-target_d);
    let n_cap = (grid.j_max - m) as usize;
    let mut sum = f[m as usize];
    let mut abs_sum = sum.to_c64().norm();
    let mut pow = XComplex::ONE;
    let mut terms = 1usize;
    let mut last = abs_sum;
    let mut n_stop = 0usize;
    let mut reached = false;
    for n in 1..=n_cap {
        pow = pow * -eps / (n as f64);
        let term = f[m as usize + n] * pow;
        sum = sum + term;
        last = term.to_c64().norm();
        abs_sum += last;
        n_stop = n;
        if last <= thr * sum.to_c64().norm() {
            reached = true;
            break;
        }
        terms += 1;
    }
    let denom = sum.to_c64().norm().max(f64::MIN_POSITIVE);
    let floor = store_unit * abs_sum / denom;
    let est = if reached {
        last / denom + floor
    } else {
        // geometric tail off the last term; 1.5 covers mild growth of the
        // ladder values along the index
        let q = (1.5 * eps.abs().to_f64() / (n_stop as f64 + 2.0)).min(0.9);
        (last / denom) * q / (1.0 - q) + floor
    };
    Expansion { value: sum, terms, est, reached }
}

/// Converging-factor depth for the descending-series fallback: as deep as
/// the series itself, which roughly squares its truncation error.
fn fallback_depth(m: u32, zw: Complex64) -> usize {
    (zw.norm() + m as f64 + 0.5).floor() as usize
}

/// Evaluates `F_m(z)` to about `target_d` digits off the grid, falling
/// back to the descending series beyond the covered rectangle.  When the
/// target cannot be met within the stored ladder the best value is still
/// returned and the error estimate reports the leftover truncation.
pub fn eval(m: u32, z: Complex64, target_d: f64, grid: &TaylorGrid) -> Result<SeriesResult> {
    if m > grid.j_max {
        return Err(Error::Domain("expansion index exceeds the stored ladder"));
    }
    let reflect = z.im < 0.0;
    let zw = if reflect { z.conj() } else { z };
    let r = if in_margin(grid, zw) {
        let e = expand(grid, m, zw, target_d);
        // rounding the double-word sum into a binary64 result costs an ulp
        SeriesResult::new(e.value.to_c64(), e.terms, e.est + f64::EPSILON)
    } else {
        series::laurent_cf(m, zw, fallback_depth(m, zw))?
    };
    Ok(if reflect {
        SeriesResult::new(r.value.conj(), r.terms_used, r.error_estimate)
    } else {
        r
    })
}

/// Double-word twin of [`eval`], for measurements past binary64.  The
/// fallback is the plain double-word descending series.
pub fn eval_x(m: u32, z: Complex64, target_d: f64, grid: &TaylorGrid) -> Result<(XComplex, usize)> {
    if m > grid.j_max {
        return Err(Error::Domain("expansion index exceeds the stored ladder"));
    }
    let reflect = z.im < 0.0;
    let zw = if reflect { z.conj() } else { z };
    let (value, terms) = if in_margin(grid, zw) {
        let e = expand(grid, m, zw, target_d);
        (e.value, e.terms)
    } else {
        series::laurent_x(m, XComplex::from(zw))?
    };
    Ok((if reflect { value.conj() } else { value }, terms))
}

/// The term count [`eval`] would report, as a diagnostic.  Unlike
/// [`eval`] this refuses when the target cannot be met inside the stored
/// ladder, which is how sweeps detect out-of-reach (m, target) pairs.
pub fn terms_needed(m: u32, z: Complex64, target_d: f64, grid: &TaylorGrid) -> Result<usize> {
    if m > grid.j_max {
        return Err(Error::Domain("expansion index exceeds the stored ladder"));
    }
    let zw = if z.im < 0.0 { z.conj() } else { z };
    if in_margin(grid, zw) {
        let e = expand(grid, m, zw, target_d);
        if e.reached {
            Ok(e.terms)
        } else {
            Err(Error::Range("target digits unreachable within the stored ladder"))
        }
    } else {
        series::laurent_cf(m, zw, fallback_depth(m, zw)).map(|r| r.terms_used)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{self, EvalRequest};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::path::PathBuf;
    use std::sync::OnceLock;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn default_grid() -> &'static TaylorGrid {
        static G: OnceLock<TaylorGrid> = OnceLock::new();
        G.get_or_init(|| build_grid(&GridSpec::default()).unwrap())
    }

    fn dense_grid() -> &'static TaylorGrid {
        static G: OnceLock<TaylorGrid> = OnceLock::new();
        G.get_or_init(|| build_grid(&GridSpec::spanning(1.0, 30)).unwrap())
    }

    fn scratch_file(tag: &str) -> PathBuf {
        let mut p = std::env::temp_dir();
        p.push(format!("fmgrid-test-{}-{tag}.fmg", std::process::id()));
        p
    }

    #[test]
    fn spanning_covers_the_production_rectangle() {
        let d = GridSpec::default();
        assert_eq!((d.s, d.k_min, d.k_max, d.l_max, d.j_max), (3.0, -11, 6, 12, 30));
        assert_eq!(d.node_count(), 18 * 13);
        let f = GridSpec::spanning(1.0, 30);
        assert_eq!((f.k_min, f.k_max, f.l_max), (-33, 18, 36));
    }

    #[test]
    fn build_rejects_bad_specs() {
        let ok = GridSpec::default();
        for bad in [
            GridSpec { s: 0.0, ..ok },
            GridSpec { s: -1.0, ..ok },
            GridSpec { s: f64::NAN, ..ok },
            GridSpec { k_min: 7, k_max: 6, ..ok },
            GridSpec { l_max: -1, ..ok },
            GridSpec { j_max: 65, ..ok },
            GridSpec { k_min: -600, k_max: 600, l_max: 1200, ..ok },
        ] {
            assert!(matches!(build_grid(&bad), Err(Error::Domain(_))), "{bad:?}");
        }
    }

    #[test]
    fn single_node_grid_at_the_origin_pins_inverse_odd_integers() {
        let g = build_grid(&GridSpec { s: 1.0, k_min: 0, k_max: 0, l_max: 0, j_max: 30 }).unwrap();
        for (j, v) in g.node_values(0, 0).iter().enumerate() {
            let exact = XReal::from(2.0 * j as f64 + 1.0).recip();
            let err = (*v - XComplex::from(exact)).abs().to_f64();
            assert!(err <= 1e-20 * exact.to_f64(), "j={j} err={err:.2e}");
        }
        let r = eval(3, c(0.0, 0.0), 14.0, &g).unwrap();
        assert_eq!(r.terms_used, 1);
        assert_eq!(r.value, c(1.0 / 7.0, 0.0));
    }

    #[test]
    fn eval_at_a_node_returns_the_stored_value_in_one_term() {
        let g = default_grid();
        let stored = g.node_values(1, 1)[0].to_c64();
        let r = eval(0, c(3.0, 3.0), 14.0, g).unwrap();
        assert_eq!(r.terms_used, 1);
        assert_eq!(r.value, stored);
        let rc = eval(0, c(3.0, -3.0), 14.0, g).unwrap();
        assert_eq!(rc.value, stored.conj());
    }

    #[test]
    fn nearest_node_ties_go_down_then_left() {
        let g = default_grid();
        // midline between k=0 and k=1
        assert_eq!(nearest_node(g, c(1.5, 0.2)), (0, 0));
        // midline between l=0 and l=1
        assert_eq!(nearest_node(g, c(6.0, 1.5)), (2, 0));
        // cell centre: four-way tie
        assert_eq!(nearest_node(g, c(1.5, 1.5)), (0, 0));
        assert_eq!(nearest_node(g, c(-1.5, 4.5)), (-1, 1));
        // margin points clamp to the rim nodes
        assert_eq!(nearest_node(g, c(19.4, 0.0)), (6, 0));
        assert_eq!(nearest_node(g, c(-34.4, 37.4)), (-11, 12));
    }

    #[test]
    fn worst_offset_to_the_nearest_node_is_half_stride_times_sqrt2() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x9d2c_5680);
        for g in [default_grid(), dense_grid()] {
            let bound = g.s * g.s / 2.0;
            // cell centres attain the bound exactly
            let centre = c(g.s * 0.5, g.s * 1.5);
            let (k, l) = nearest_node(g, centre);
            let d = centre - g.node_z0(k, l);
            assert!((d.norm_sqr() - bound).abs() <= 1e-12 * bound);
            let mut worst = 0.0f64;
            for _ in 0..4000 {
                let z = c(
                    rng.gen_range(g.k_min as f64 * g.s - g.s / 2.0..g.k_max as f64 * g.s + g.s / 2.0),
                    rng.gen_range(0.0..g.l_max as f64 * g.s + g.s / 2.0),
                );
                let (k, l) = nearest_node(g, z);
                worst = worst.max((z - g.node_z0(k, l)).norm_sqr());
            }
            assert!(worst <= bound * (1.0 + 1e-12), "worst {worst} bound {bound}");
        }
    }

    #[test]
    fn term_count_maxima_match_the_stride_three_and_stride_one_tables() {
        // m=0, target 14: coarse lattice tops out near 23 terms, the
        // stride-one lattice near 16
        for (g, printed) in [(default_grid(), 23i64), (dense_grid(), 16i64)] {
            let mut max = 0usize;
            for i in 0..=204 {
                for j in 0..=144 {
                    let z = c(-33.0 + 0.25 * i as f64, 0.25 * j as f64);
                    max = max.max(terms_needed(0, z, 14.0, g).unwrap());
                }
            }
            assert!(
                (max as i64 - printed).abs() <= 2,
                "max {max} vs printed {printed} at stride {}",
                g.s
            );
        }
    }

    #[test]
    fn out_of_reach_target_errs_in_terms_but_still_evaluates() {
        let g = default_grid();
        // worst-case offset right of a node in the band where exp(-z)
        // outweighs every ladder value, highest index, 17 digits: the
        // ladder ends before the term test is satisfied
        let z = c(-19.5, 1.5);
        assert!(matches!(terms_needed(5, z, 17.0, g), Err(Error::Range(_))));
        let r = eval(5, z, 17.0, g).unwrap();
        assert_eq!(r.terms_used, 26);
        assert!(r.error_estimate > 1e-21, "est {:.2e}", r.error_estimate);
        let reference = oracle::eval(&EvalRequest::new(5, z)).unwrap();
        assert!(oracle::digits_of(r.value, reference).d >= 15.5);
        // one digit less is within reach at the same point, and it takes
        // the full stored ladder to get there
        assert_eq!(terms_needed(5, z, 16.0, g).unwrap(), 25);
    }

    #[test]
    fn eval_matches_the_reference_across_the_covered_domain() {
        let g = default_grid();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5851_f42d);
        let mut checked = 0usize;
        while checked < 10_000 {
            let z = c(rng.gen_range(-34.4..19.4), rng.gen_range(0.0..37.4));
            if z.norm() > 44.9 {
                continue;
            }
            checked += 1;
            let m = rng.gen_range(0u32..=5);
            let target = rng.gen_range(12u32..=17) as f64;
            let reference = oracle::eval(&EvalRequest::new(m, z)).unwrap();
            let (vx, _) = eval_x(m, z, target, g).unwrap();
            let d = oracle::digits_of_x(vx, reference);
            match terms_needed(m, z, target, g) {
                Ok(_) => assert!(d >= target - 0.5, "d={d:.2} target={target} m={m} z={z}"),
                Err(_) => {
                    let est = eval(m, z, target, g).unwrap().error_estimate;
                    assert!(d >= -est.log10() - 1.0, "d={d:.2} est={est:.2e} m={m} z={z}");
                }
            }
        }
    }

    #[test]
    fn derivative_of_order_zero_reproduces_order_one() {
        let g = default_grid();
        let h = 1e-4;
        for z in [c(-7.3, 2.1), c(2.6, 9.4), c(11.2, 0.7), c(-20.5, 14.3)] {
            let up = eval(0, z + c(h, 0.0), 15.0, g).unwrap().value;
            let dn = eval(0, z - c(h, 0.0), 15.0, g).unwrap().value;
            let diff = (up - dn) / (2.0 * h);
            let f1 = eval(1, z, 15.0, g).unwrap().value;
            let rel = (diff + f1).norm() / f1.norm();
            assert!(rel <= 1e-7, "rel {rel:.2e} at {z}");
        }
    }

    #[test]
    fn grid_and_descending_paths_agree_on_the_margin_contour() {
        let g = default_grid();
        for z in [
            c(19.5, 16.0),
            c(19.5, 30.0),
            c(0.0, 37.5),
            c(-25.0, 37.5),
            c(-34.5, 0.0),
            c(-34.5, 20.0),
        ] {
            assert!(in_margin(g, z), "{z} should sit on the contour");
            let inside = eval(0, z, 14.0, g).unwrap().value;
            let outside = series::laurent_cf(0, z, fallback_depth(0, z)).unwrap().value;
            let rel = (inside - outside).norm() / inside.norm();
            assert!(rel <= 1e-12, "rel {rel:.2e} at {z}");
        }
    }

    #[test]
    fn error_estimates_cover_the_measured_error() {
        let g = default_grid();
        for (m, z, target) in [
            (0, c(1.3, 0.4), 8.0),
            (1, c(-8.2, 5.9), 14.0),
            (3, c(16.4, 11.0), 17.0),
            (5, c(-30.1, 2.2), 12.0),
            (0, c(-36.0, 5.0), 14.0),  // beyond the margin: descending path
            (2, c(19.8, 20.0), 14.0),
        ] {
            let r = eval(m, z, target, g).unwrap();
            if r.error_estimate > 1e-4 {
                continue;
            }
            let reference = oracle::eval(&EvalRequest::new(m, z)).unwrap();
            let d = oracle::digits_of(r.value, reference).d;
            assert!(
                d >= -r.error_estimate.log10() - 1.0,
                "m={m} z={z} d={d:.2} est={:.2e}",
                r.error_estimate
            );
        }
    }

    #[test]
    fn grid_files_round_trip_byte_for_byte() {
        let g = build_grid(&GridSpec { s: 3.0, k_min: -2, k_max: 2, l_max: 2, j_max: 8 }).unwrap();
        let p1 = scratch_file("roundtrip-a");
        let p2 = scratch_file("roundtrip-b");
        save_grid(&g, &p1).unwrap();
        let loaded = load_grid(&p1).unwrap();
        save_grid(&loaded, &p2).unwrap();
        let b1 = fs::read(&p1).unwrap();
        let b2 = fs::read(&p2).unwrap();
        assert_eq!(b1, b2);
        assert_eq!(loaded.digits, STORED_DIGITS);
        assert_eq!(loaded.spec(), g.spec());
        // storage keeps 25 digits, far beyond what eval claims
        for z in [c(0.3, 1.2), c(-5.9, 4.4)] {
            let a = eval_x(1, z, 17.0, &g).unwrap().0;
            let b = eval_x(1, z, 17.0, &loaded).unwrap().0;
            let rel = (a - b).abs().to_f64() / a.abs().to_f64();
            assert!(rel <= 1e-23, "rel {rel:.2e}");
        }
        fs::remove_file(&p1).unwrap();
        fs::remove_file(&p2).unwrap();
    }

    /// Rewrites the checksum line so corruption tests reach the deeper
    /// validation layers.
    fn restamp(text: &str) -> String {
        let nl = text.trim_end_matches('\n').rfind('\n').unwrap();
        let mut out = text[..=nl].to_string();
        out.push_str(&format!("CRC32 {:08x}\n", crc32(out.as_bytes())));
        out
    }

    #[test]
    fn corrupting_a_stored_digit_trips_the_recurrence_check() {
        let g = build_grid(&GridSpec { s: 3.0, k_min: -1, k_max: 1, l_max: 1, j_max: 6 }).unwrap();
        let p = scratch_file("corrupt");
        save_grid(&g, &p).unwrap();
        let text = fs::read_to_string(&p).unwrap();

        // pick the fourth significant digit of the third node's first value
        let line_start = text
            .lines()
            .take(4)
            .map(|l| l.len() + 1)
            .sum::<usize>();
        let tok_at = text[line_start..].find(' ').unwrap() + 1;
        let tok_at = line_start + tok_at + text[line_start + tok_at..].find(' ').unwrap() + 1;
        let digit_at = tok_at + 4;
        let mut bytes = text.clone().into_bytes();
        let old = bytes[digit_at];
        assert!(old.is_ascii_digit(), "found {:?}", old as char);
        bytes[digit_at] = if old == b'9' { b'1' } else { old + 1 };

        // untouched checksum: caught at the checksum layer
        fs::write(&p, &bytes).unwrap();
        match load_grid(&p) {
            Err(Error::Format(msg)) => assert!(msg.contains("checksum"), "{msg}"),
            other => panic!("expected checksum failure, got {other:?}"),
        }

        // repaired checksum: caught by the recurrence residual
        let patched = restamp(&String::from_utf8(bytes).unwrap());
        fs::write(&p, patched).unwrap();
        match load_grid(&p) {
            Err(Error::Format(msg)) => assert!(msg.contains("recurrence"), "{msg}"),
            other => panic!("expected recurrence failure, got {other:?}"),
        }
        fs::remove_file(&p).unwrap();
    }

    #[test]
    fn malformed_grid_files_are_rejected() {
        let g = build_grid(&GridSpec { s: 1.0, k_min: 0, k_max: 1, l_max: 0, j_max: 2 }).unwrap();
        let good = render_grid(&g);
        let p = scratch_file("malformed");

        let wrong_magic = restamp(&good.replacen("FMGRID/1", "FMGRID/2", 1));
        let truncated: String = {
            let mut lines: Vec<&str> = good.trim_end().lines().collect();
            lines.remove(lines.len() - 2); // drop the last node line
            restamp(&(lines.join("\n") + "\n"))
        };
        let big_ladder = restamp(&good.replacen(" 2 25", " 65 25", 1));
        for (tag, text) in [
            ("empty", String::new()),
            ("no newline", "FMGRID/1".to_string()),
            ("wrong magic", wrong_magic),
            ("missing node", truncated),
            ("ladder cap", big_ladder),
            ("garbled checksum", good.replace("CRC32 ", "CRC32 zz")),
        ] {
            fs::write(&p, &text).unwrap();
            assert!(matches!(load_grid(&p), Err(Error::Format(_))), "{tag}");
        }
        fs::remove_file(&p).unwrap();
    }

    proptest! {
        #[test]
        fn conjugate_reflection_is_exact(
            re in -36.0..21.0f64,
            im in 0.0..39.0f64,
            m in 0u32..=5,
        ) {
            let g = default_grid();
            let a = eval(m, c(re, im), 14.0, g).unwrap();
            let b = eval(m, c(re, -im), 14.0, g).unwrap();
            prop_assert_eq!(a.value.re, b.value.re);
            prop_assert_eq!(a.value.im, -b.value.im);
            prop_assert_eq!(a.terms_used, b.terms_used);
        }

        #[test]
        fn terms_twin_reports_what_eval_used(
            re in -36.0..21.0f64,
            im in 0.0..39.0f64,
            m in 0u32..=5,
            target in 8u32..=16,
        ) {
            let g = default_grid();
            let z = c(re, im);
            if let Ok(t) = terms_needed(m, z, target as f64, g) {
                prop_assert_eq!(t, eval(m, z, target as f64, g).unwrap().terms_used);
            }
        }
    }
}

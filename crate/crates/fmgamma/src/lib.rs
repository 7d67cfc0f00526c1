//! Evaluation of the Gaussian-kernel moment integrals
//!
//! ```text
//!           1
//!           /   2m   -z t^2
//! F_m(z) =  |  t    e       dt ,      m = 0, 1, 2, ...,   z complex,
//!           /
//!           0
//! ```
//!
//! together with a survey harness that measures, over rectangles of the
//! complex plane, how many correct decimal digits each candidate method
//! delivers and how many terms it needs to get there.
//!
//! The integrals turn up wherever a Gaussian factor is integrated against
//! even moments on a finite interval: molecular repulsion integrals, plasma
//! dispersion functions, diffraction patterns.  They are entire in `z`, obey
//! `F_m(conj z) = conj(F_m(z))`, and satisfy the two-term recurrence
//! `2z F_m(z) = (2m-1) F_{m-1}(z) - exp(-z)`, which connects neighbouring
//! indices but trades accuracy for speed in one direction or the other.
//!
//! Modules:
//!
//! * [`xprec`]: double-word real and complex arithmetic (roughly 31
//!   significant digits) used by the reference evaluator and by table
//!   generation.
//! * [`oracle`]: the reference evaluator, certified to 20 digits inside
//!   `|z| <= 45`, `m <= 64`, plus the digit-counting metric every survey
//!   uses.
//! * [`series`]: expansions around `z = 0` and `z = infinity`: the ascending
//!   power series, the descending generalized-argument series with and
//!   without a continued-fraction converging factor, and several rearranged
//!   forms that trade term count against bookkeeping.
//! * [`indexinterp`]: interpolation across the index `m` from half-integer
//!   slots where closed forms exist.
//! * [`quadmethods`]: interval-splitting Taylor hybrids, a Fourier-expanded
//!   carrier, Gauss-Jacobi moment quadrature, and cubic-spline moment
//!   fitting.
//! * [`salzer`]: rational approximation of the normalized incomplete gamma
//!   functions with precomputed complex nodes.
//! * [`specfun`]: routes through named special functions: the Faddeeva
//!   function via Gauss-Hermite rules, modified spherical Bessel sums, and
//!   a continued-fraction ratio of Kummer functions.
//! * [`gridtaylor`]: the recommended production evaluator: Taylor expansion
//!   off a precomputed grid of derivative tables, with a descending-series
//!   fallback outside the grid.
//! * [`tables`]: embedded reference constants (series coefficients,
//!   quadrature rules, worst-case fit and term-count figures) and the
//!   verifiers that regenerate them from scratch.
//! * [`survey`]: accuracy and term-count sweeps over complex rectangles,
//!   CSV emission, and the method-comparison report.
//!
//! Everything is deterministic: no global state, no environment probes, and
//! surveys visit grid points in row-major order.

pub mod oracle;
pub mod gridtaylor;
pub mod indexinterp;
pub mod quadmethods;
pub mod salzer;
pub mod series;
pub mod specfun;
pub mod tables;
pub mod xprec;

use std::fmt;

pub use num_complex::Complex64;

/// Errors shared across the crate.
#[derive(Debug)]
pub enum Error {
    /// Argument outside the domain where the requested routine is defined.
    Domain(&'static str),
    /// Argument magnitude beyond the supported range.
    Range(&'static str),
    /// The reference evaluator cannot certify the requested precision.
    /// Carries the best value obtained and its estimated relative error.
    Unreliable { value: Complex64, est: f64 },
    /// Malformed text data (grid files, tables, command-line values).
    Format(String),
    /// Grid construction or table verification failed; the message
    /// lists the offending entries.
    Build(String),
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::Range(what) => write!(f, "range error: {what}"),
            Error::Unreliable { est, .. } => {
                write!(f, "reference value not certified (relative error ~{est:.2e})")
            }
            Error::Format(what) => write!(f, "format error: {what}"),
            Error::Build(what) => write!(f, "build error: {what}"),
            Error::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Outcome of one truncated-expansion or quadrature evaluation.
///
/// `error_estimate` is the method's own (relative) accounting of what it
/// left out, from its stopping rule or truncation bound.  It is a claim,
/// not a measurement; surveys compare it against the reference evaluator.
#[derive(Clone, Copy, Debug)]
pub struct SeriesResult {
    pub value: Complex64,
    /// Terms actually accumulated (quadratures report their point count).
    pub terms_used: usize,
    pub error_estimate: f64,
}

impl SeriesResult {
    pub fn new(value: Complex64, terms_used: usize, error_estimate: f64) -> Self {
        SeriesResult { value, terms_used, error_estimate }
    }
}

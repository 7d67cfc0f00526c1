//! Quadrature-flavoured evaluators of F_m(z).
//!
//! Everything in this module trades exponential evaluations for accuracy
//! in some way:
//!
//! * [`hermite_local_taylor`]: tiles [0, 1] into subintervals and sums
//!   exact integrals of local Taylor expansions of the kernel, which
//!   brings in even-index Hermite polynomials.
//! * [`algebraic_taylor`]: after `u = t^2` the algebraic factor
//!   `u^{m-1/2}` is the awkward part; it is expanded to second order per
//!   subinterval while the exponential integrates exactly.  The patched
//!   variant swaps the first subinterval, where that expansion is poor,
//!   for a short power series.
//! * [`fourier_table`] / [`fourier_eval`]: a cosine fit of `u^{m-1/2}`
//!   turns the integral into a sum of rational terms.
//! * [`gauss_jacobi_rule`] / [`gauss_jacobi_eval`]: Gauss quadrature with
//!   the weight `t^{2m}` absorbed into the rule, so n kernel samples
//!   integrate polynomials of degree 2n-1 exactly.
//! * [`spline_eval`] / [`moment_integral`]: cubic-Hermite interpolation
//!   of the kernel admits closed-form sums for m = 0 and m = 1.
//!
//! None of these compete with the series methods on speed per digit; they
//! exist to be measured against them.

mod algebraic;
mod fourier;
mod hermite;
mod jacobi;
mod spline;

pub use algebraic::{algebraic_taylor, algebraic_taylor_patched};
pub use fourier::{fourier_eval, fourier_table, FourierTable};
pub use hermite::{even_scaled_hermite, hermite_local_taylor};
pub use jacobi::{
    gauss_jacobi_eval, gauss_jacobi_rule, gauss_jacobi_rule_x, gauss_legendre_rule, QuadRule,
    RuleKind,
};
pub use spline::{moment_integral, spline_eval};

/// Uniform tiling of [0, 1] into `n` subintervals of half-width
/// `delta = 1/(2n)`, centered at `(2l - 1) delta`.
#[derive(Clone, Debug)]
pub struct SubintervalConfig {
    pub n: usize,
    pub delta: f64,
    pub centers: Vec<f64>,
}

impl SubintervalConfig {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "need at least one subinterval");
        let delta = 1.0 / (2.0 * n as f64);
        let centers = (1..=n).map(|l| (2 * l - 1) as f64 * delta).collect();
        SubintervalConfig { n, delta, centers }
    }
}

//! Evaluations of F_m(z) that route through other special functions.
//!
//! Three relocations live here:
//!
//! * [`f0_via_faddeeva`]: F_0 in terms of the Faddeeva function w, with
//!   w itself approximated by a rational sum over the nodes of a
//!   Gauss-Hermite rule ([`hermite_rule`]).  Strong where |z| is large.
//! * [`bessel_series`]: the Kummer function behind F_m expanded in
//!   modified spherical Bessel functions, either from closed forms in
//!   e^{2ζ} or by downward recurrence near the origin.  Converges well
//!   only close to the origin.
//! * [`f_via_dijkstra`] / [`f_via_dijkstra_pos`]: a continued fraction
//!   for a ratio of contiguous Kummer functions.  The plain form excels
//!   near the negative real axis; the rearranged form trades that for
//!   coverage of the right half-plane.

mod bessel;
mod dijkstra;
mod faddeeva;
mod gauss_hermite;

pub use bessel::{bessel_series, bessel_term};
pub use dijkstra::{
    dijkstra_k, dijkstra_k_plain, dijkstra_k_x, f_via_dijkstra, f_via_dijkstra_pos,
    f_via_dijkstra_x,
};
pub use faddeeva::{f0_via_faddeeva, faddeeva};
pub use gauss_hermite::{hermite_rule, HermiteRule};

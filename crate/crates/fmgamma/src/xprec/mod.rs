//! Double-word arithmetic: reals and complexes carried as unevaluated sums
//! of two binary64 values.
//!
//! A double-word value represents `hi + lo` with `|lo| <= ulp(hi)/2`, which
//! doubles the significand to ~106 bits, about 31 significant decimal
//! digits.  That is enough headroom to certify 20-digit reference values
//! and to build coefficient tables whose printed forms carry 24-25 digits.
//!
//! The arithmetic here is the classic error-free-transformation kind:
//! every product goes through a fused multiply-add to recover its rounding
//! error exactly, every sum through a two-sum.  Elementary functions (exp,
//! sin/cos, sqrt) are implemented only over the argument ranges the rest of
//! the crate actually exercises; see the individual functions for limits.

mod complex;
pub mod dec;
mod real;

pub use complex::XComplex;
pub use real::XReal;

//! Bohr radii for bounded p-symmetric functions and for functions
//! subordinate to odd univalent maps.
//!
//! The crate is split along the computation pipeline:
//!
//! - [`series`]: truncated power series, Blaschke/Schwarz test functions,
//!   FFT coefficient extraction and certified majorant evaluation.
//! - [`rootfind`]: sign-change scan plus bisection/Newton on `(0, 1)`.
//! - [`optimize`]: grid plus golden-section maximization in one variable.
//! - [`radii`]: the radii themselves, extremal functions and the auxiliary
//!   maximization problems behind them.
//! - [`verify`]: seeded randomized trials checking each inequality on
//!   explicit functions with certified error intervals.
//!
//! The majorant of `f(z) = Σ a_n z^n` is `M_f(r) = Σ |a_n| r^n`; a Bohr radius
//! of a class is the largest `r` with `M_f(r) ≤ 1` for every member.

// `!(x < y)` rejects NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod optimize;
pub mod radii;
pub mod rootfind;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use series::{Bound, Interval, PowerSeries};

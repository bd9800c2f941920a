//! Shared numerical kernels: quadrature, root finding, interpolation,
//! compensated summation.

mod interp;
mod quad;
mod rootfind;
mod summation;

pub use interp::{LinearTable, MonotoneCubic};
pub use quad::adaptive_simpson;
pub use rootfind::{bisect_increasing, bracket_increasing, golden_max};
pub use summation::{neumaier_sum, DoubleDouble};

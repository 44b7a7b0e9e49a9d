//! Pickands dependence measures and functions.
//!
//! A Pickands dependence measure is a probability measure on [0,1] with mean
//! 1/2. It determines a Pickands function through
//! `A(t) = 1 - t + 2∫₀ᵗ F(z) dz`, whose right derivative is `2F(t) - 1`.

mod cantor;
mod function;
mod measure;

pub use cantor::{cantor_cdf, cantor_integral};
pub use function::{upsilon, FunctionReport, PickandsFunction};
pub use measure::{Density, MeasureReport, MeasureSpec, PickandsMeasure, MEASURE_TOL};

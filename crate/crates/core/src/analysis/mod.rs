//! Distances between copulas and finite-difference derivative diagnostics.

mod derivative;
mod metrics;

pub use derivative::{
    kernel_derivative_consistency, kernel_derivative_residual, nondiff_scan, one_sided_partial,
    one_sided_partial_with, partial_probe, schwarz_check, DerivativeProbe, Nondifferentiability,
    Side, CENTRAL_STEP, DEFAULT_STEPS, DEFAULT_THRESHOLD,
};
pub use metrics::{d_inf, d_p, MetricReport, SUP_Y_GRID};

//! Bivariate copulas through their Markov kernels.
//!
//! Extreme value copulas are built from Pickands dependence measures, and
//! shuffles, checkerboards, rotation copulas and mixtures share one
//! [`Copula`] interface with distribution function, conditional distribution
//! `K(x,[0,y])`, kernel point masses and transpose. On top of that sit
//! validation, sampling, kernel metrics and derivative diagnostics.

pub mod analysis;
pub mod constructions;
pub mod copula;
pub mod error;
pub mod evc;
pub mod json;
pub mod pickands;
pub mod reference;
pub mod rng;
pub mod spec;

pub use copula::{
    disintegration_residual, empirical_copula, kernel_quantile, sample, sample_with, validate_cdf,
    validate_copula, Copula, EmpiricalCopula, Family, SampleSet, ValidationReport,
};
pub use error::{Error, Result};
pub use evc::ExtremeValueCopula;
pub use pickands::{upsilon, PickandsFunction, PickandsMeasure};
pub use rng::CounterRng;
pub use spec::CopulaSpec;

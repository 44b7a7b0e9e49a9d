//! Reference instances used throughout the test suites and the docs.

use crate::copula::Copula;
use crate::evc::ExtremeValueCopula;
use crate::pickands::{Density, PickandsMeasure};

/// `(1/5)δ_{1/4} + (3/5)δ_{1/2} + (1/5)δ_{3/4}`: purely atomic, support band
/// between the graphs `x³` and `x^{1/3}`.
pub fn three_atom_measure() -> PickandsMeasure {
    PickandsMeasure::new(vec![(0.25, 0.2), (0.5, 0.6), (0.75, 0.2)], None, 0.0)
        .expect("valid atoms")
}

/// Measure with distribution function
///
/// ```text
/// F(t) = t                 on [0, 1/2)
///        3/5               on [1/2, 3/4)
///        (16/35)t + 1/2    on [3/4, 1)
///        1                 at 1
/// ```
///
/// i.e. uniform density on [0,1/2), atoms 1/10 at 1/2, 17/70 at 3/4 and
/// 3/70 at 1, density 16/35 on [3/4,1).
pub fn mixed_measure() -> PickandsMeasure {
    PickandsMeasure::new(
        vec![(0.5, 0.1), (0.75, 17.0 / 70.0), (1.0, 3.0 / 70.0)],
        Some(Density {
            breaks: vec![0.0, 0.5, 0.75, 1.0],
            values: vec![1.0, 0.0, 16.0 / 35.0],
        }),
        0.0,
    )
    .expect("valid measure")
}

pub fn three_atom_evc() -> Copula {
    Copula::Evc(ExtremeValueCopula::from_measure(&three_atom_measure()).expect("valid"))
}

pub fn mixed_evc() -> Copula {
    Copula::Evc(ExtremeValueCopula::from_measure(&mixed_measure()).expect("valid"))
}

pub fn gumbel(theta: f64) -> Copula {
    Copula::Evc(ExtremeValueCopula::gumbel(theta).expect("theta >= 1"))
}

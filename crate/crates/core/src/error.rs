use thiserror::Error;

/// Errors raised while building or querying copulas.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The measure is structurally malformed or violates mass/mean constraints.
    #[error("invalid Pickands measure: {0}")]
    InvalidMeasure(String),
    #[error("parameter out of domain: {0}")]
    Domain(String),
    /// An extreme-value-only query was made on a copula of another family.
    #[error("operation needs an extreme value copula, got family `{0}`")]
    MeasureUnavailable(&'static str),
    #[error("t = {0} is not an atom of the Pickands measure")]
    NotAnAtom(f64),
    #[error("N*T is not doubly stochastic (worst residual {residual:e})")]
    NotDoublyStochastic { residual: f64 },
    #[error("mixture weights must be positive and sum to 1: {0}")]
    WeightsInvalid(String),
    #[error("sigma is not a permutation of 1..={0}")]
    InvalidPermutation(usize),
    #[error("sample is empty")]
    EmptySample,
    #[error("no finite-difference step keeps x = {x} inside (0,1)")]
    StepUnderflow { x: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

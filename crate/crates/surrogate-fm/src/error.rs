//! Error type for surrogate fitting and quadratic-model assembly.

use thiserror::Error;

/// Errors raised while building datasets, training, or manipulating
/// quadratic models.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurrogateError {
    #[error("expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("sample count mismatch: {xs} inputs vs {ys} targets")]
    SampleCountMismatch { xs: usize, ys: usize },

    #[error("training needs at least one sample")]
    EmptyDataset,

    #[error("target value at sample {index} is not finite")]
    NonFiniteTarget { index: usize },

    #[error("hyperparameter {name} has invalid value {value}")]
    InvalidHyperparameter { name: &'static str, value: f64 },

    #[error("factor rows must all have the same length, row {row} has {found}, expected {expected}")]
    RaggedFactors { row: usize, expected: usize, found: usize },

    #[error("model has no nonzero coefficients to scale by")]
    AllZeroCoefficients,
}

//! Error type for the annealing and exhaustive solvers.

use thiserror::Error;

/// Errors raised by solver configuration or problem size checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnnealError {
    #[error("schedule parameter {name} has invalid value {value}")]
    InvalidSchedule { name: &'static str, value: f64 },

    #[error("exhaustive search over {num_vars} variables exceeds the {limit}-variable limit")]
    ProblemTooLarge { num_vars: usize, limit: usize },
}

//! Error type for the optimization drivers.

use encodings::EncodingError;
use qubo_annealer::AnnealError;
use rna_thermo::ThermoError;
use surrogate_fm::SurrogateError;
use thiserror::Error;

/// Errors raised while configuring or running an optimization.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Thermo(#[from] ThermoError),

    #[error(transparent)]
    Surrogate(#[from] SurrogateError),

    #[error(transparent)]
    Anneal(#[from] AnnealError),

    #[error(transparent)]
    Encoding(#[from] EncodingError),

    #[error("configuration field {name} has invalid value {value}")]
    InvalidConfig { name: &'static str, value: f64 },
}

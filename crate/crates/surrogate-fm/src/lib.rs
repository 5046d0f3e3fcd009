//! Data-driven quadratic surrogate for black-box objectives over bits.
//!
//! The pieces fit together as: evaluated bit vectors accumulate in a
//! `Dataset`; `fm_train` fits a factorized quadratic model to them from
//! scratch; `fm_to_qubo` rewrites the fitted model as an explicit quadratic
//! problem a combinatorial solver can minimize; `add_penalty` and
//! `normalize_qubo` prepare that problem for solving.

pub mod error;
pub mod model;
pub mod qubo;
pub mod train;

pub use error::SurrogateError;
pub use model::{fm_predict, mse_loss, mse_loss_and_gradient, Dataset, FmGradient, FmModel};
pub use qubo::{add_penalty, fm_to_qubo, normalize_qubo, QuboProblem};
pub use train::{fm_train, TrainConfig};

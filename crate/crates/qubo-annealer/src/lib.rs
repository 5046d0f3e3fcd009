//! Solvers for quadratic unconstrained binary optimization.
//!
//! * `sa_solve`: Metropolis simulated annealing with a geometric
//!   temperature ladder and independent restarts; the workhorse for
//!   problems too large to enumerate.
//! * `exhaustive_solve`: exact Gray-code enumeration for up to 20
//!   variables, used to ground-truth the annealer.

pub mod anneal;
pub mod error;
mod fields;

pub mod exhaustive;

pub use anneal::{sa_solve, AnnealSchedule, SolveResult};
pub use error::AnnealError;
pub use exhaustive::{exhaustive_solve, EXHAUSTIVE_LIMIT};

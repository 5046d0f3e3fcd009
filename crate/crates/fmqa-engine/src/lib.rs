//! Surrogate-assisted sequence design engine.
//!
//! Ties the other crates into complete optimization runs:
//!
//! * `run_fmqa`: the surrogate loop (fit, solve, decode, evaluate) on the
//!   normalized ensemble defect.
//! * `run_random_search`, `run_ga`: baselines under identical budgets and
//!   shared initialization.
//! * Generic `*_optimize` variants accept any `Objective`, which tests use
//!   to plant optima with known locations.
//!
//! Runs are pure functions of (target, config, seed): records serialize to
//! byte-identical JSON across repeats, platforms, and hosts.

pub mod baselines;
pub mod config;
pub mod driver;
pub mod error;
pub mod fmqa;
pub mod objective;
pub mod record;
pub mod seeds;

pub use baselines::{ga_optimize, random_search_optimize, run_ga, run_random_search};
pub use config::{GaConfig, Method, RunConfig};
pub use error::EngineError;
pub use fmqa::{fmqa_optimize, run_fmqa};
pub use objective::{HammingObjective, NedObjective, Objective};
pub use record::{RunRecord, Trial, TrialSource, WallStats};
pub use seeds::{mix_counter, mix_label};

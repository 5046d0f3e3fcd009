//! Run configuration shared by all drivers.

use std::fmt;
use std::str::FromStr;

use encodings::{EncodingScheme, NucleotideAssignment};
use qubo_annealer::AnnealSchedule;
use serde::{Deserialize, Serialize};
use surrogate_fm::TrainConfig;

use crate::error::EngineError;

/// Which driver produced a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Fmqa,
    RandomSearch,
    Ga,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Fmqa, Method::RandomSearch, Method::Ga];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Method::Fmqa => "fmqa",
            Method::RandomSearch => "random-search",
            Method::Ga => "ga",
        };
        f.write_str(name)
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fmqa" => Ok(Method::Fmqa),
            "random-search" => Ok(Method::RandomSearch),
            "ga" => Ok(Method::Ga),
            other => {
                Err(format!("unknown method {other:?}, expected fmqa, random-search, or ga"))
            }
        }
    }
}

/// Evolutionary baseline parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GaConfig {
    pub population: usize,
    /// Probability that a child mixes two parents instead of copying one.
    pub crossover_prob: f64,
    /// Expected number of mutated positions per child; the per-position
    /// probability is `mutation_scale / length`, capped at 1.
    pub mutation_scale: f64,
    /// Best individuals carried over unevaluated each generation.
    pub elitism: usize,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig { population: 10, crossover_prob: 0.9, mutation_scale: 5.0, elitism: 1 }
    }
}

/// Full configuration of one optimization run. The same value drives all
/// three methods so comparisons share budgets and initialization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub scheme: EncodingScheme,
    pub assignment: NucleotideAssignment,
    /// Weight of the feasibility penalty added to the surrogate's model.
    pub penalty_mu: f64,
    /// Evaluations spent on uniform random sequences before the loop.
    pub init_samples: usize,
    /// Evaluations spent by the optimization loop after initialization.
    pub budget: usize,
    pub train: TrainConfig,
    pub anneal: AnnealSchedule,
    pub ga: GaConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scheme: EncodingScheme::OneHot,
            assignment: NucleotideAssignment::default(),
            penalty_mu: 2.0,
            init_samples: 10,
            budget: 1000,
            train: TrainConfig::default(),
            anneal: AnnealSchedule::default(),
            ga: GaConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), EngineError> {
        if self.init_samples < 1 {
            return Err(EngineError::InvalidConfig {
                name: "init_samples",
                value: self.init_samples as f64,
            });
        }
        if !(self.penalty_mu > 0.0 && self.penalty_mu.is_finite()) {
            return Err(EngineError::InvalidConfig {
                name: "penalty_mu",
                value: self.penalty_mu,
            });
        }
        if self.ga.population < 2 {
            return Err(EngineError::InvalidConfig {
                name: "ga.population",
                value: self.ga.population as f64,
            });
        }
        if !(0.0..=1.0).contains(&self.ga.crossover_prob) {
            return Err(EngineError::InvalidConfig {
                name: "ga.crossover_prob",
                value: self.ga.crossover_prob,
            });
        }
        if !(self.ga.mutation_scale > 0.0 && self.ga.mutation_scale.is_finite()) {
            return Err(EngineError::InvalidConfig {
                name: "ga.mutation_scale",
                value: self.ga.mutation_scale,
            });
        }
        if self.ga.elitism >= self.ga.population {
            return Err(EngineError::InvalidConfig {
                name: "ga.elitism",
                value: self.ga.elitism as f64,
            });
        }
        Ok(())
    }

    /// Evaluations a full run consumes, identical for every method.
    pub fn total_evaluations(&self) -> usize {
        self.init_samples + self.budget
    }
}

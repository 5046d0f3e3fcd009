//! Run records: the serialized outcome of one optimization run.
//!
//! Records are written as JSON and compared byte for byte in determinism
//! checks, so everything serialized must be a pure function of (target,
//! config, seed). Wall-clock timings are kept on the struct for reporting
//! but excluded from serialization.

use encodings::BitVector;
use rna_thermo::{mfe_structure, EnergyModel, RnaSequence, SecondaryStructure};
use serde::{Deserialize, Serialize};

use crate::config::{Method, RunConfig};
use crate::error::EngineError;

/// How a trial's sequence was proposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrialSource {
    /// Uniform random draw during initialization.
    Init,
    /// Decoded from the surrogate solver's minimizer.
    Surrogate,
    /// Uniform random draw by the random-search baseline.
    Random,
    /// Offspring produced by the evolutionary baseline.
    Evolution,
}

/// One objective evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trial {
    /// Evaluation index within the run, starting at 0.
    pub evaluation: usize,
    pub sequence: String,
    /// Binary variables stored for surrogate training. Raw solver output
    /// when the decoded sequence was evaluated as-is; canonical re-encoding
    /// when the sequence was changed after decoding. Absent for methods
    /// that do not operate on bits.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bits: Option<BitVector>,
    pub value: f64,
    pub source: TrialSource,
    /// Encoding blocks that fell outside the feasible set and were
    /// repaired during decoding.
    pub repaired_blocks: usize,
    /// The proposed sequence had already been evaluated. Surrogate
    /// proposals are re-randomized at one position before evaluation when
    /// this happens.
    pub duplicate: bool,
}

/// Wall-clock breakdown of a run. Never serialized: timings vary between
/// hosts while records must stay byte-identical for a given seed.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct WallStats {
    pub total_seconds: f64,
    pub evaluate_seconds: f64,
    pub train_seconds: f64,
    pub solve_seconds: f64,
}

/// Full outcome of one run of one method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub method: Method,
    /// Target structure in dot-bracket form.
    pub target: String,
    pub seed: u64,
    pub config: RunConfig,
    pub trials: Vec<Trial>,
    pub best_sequence: String,
    pub best_value: f64,
    /// Evaluation index at which the best value was first reached.
    pub best_evaluation: usize,
    /// Whether the minimum free energy structure of `best_sequence` is
    /// exactly the target.
    pub success: bool,
    pub total_repaired_blocks: usize,
    pub total_duplicates: usize,
    #[serde(skip)]
    pub wall: WallStats,
}

impl RunRecord {
    /// Assembles a record from a finished trial log, computing the best
    /// trial (ties to the earliest) and folding the best sequence to judge
    /// success.
    pub fn from_trials(
        method: Method,
        target: &SecondaryStructure,
        seed: u64,
        config: &RunConfig,
        trials: Vec<Trial>,
        model: &EnergyModel,
        wall: WallStats,
    ) -> Result<Self, EngineError> {
        assert!(!trials.is_empty(), "a run logs at least one trial");
        let mut best = 0;
        for (i, trial) in trials.iter().enumerate() {
            if trial.value < trials[best].value {
                best = i;
            }
        }
        let best_sequence = trials[best].sequence.clone();
        let parsed: RnaSequence = best_sequence.parse()?;
        let (folded, _) = mfe_structure(&parsed, model);
        Ok(RunRecord {
            method,
            target: target.to_dot_bracket(),
            seed,
            config: config.clone(),
            best_value: trials[best].value,
            best_evaluation: trials[best].evaluation,
            success: folded == *target,
            total_repaired_blocks: trials.iter().map(|t| t.repaired_blocks).sum(),
            total_duplicates: trials.iter().filter(|t| t.duplicate).count(),
            trials,
            best_sequence,
            wall,
        })
    }

    /// Running minimum of trial values by evaluation index, for convergence
    /// curves.
    pub fn best_so_far(&self) -> Vec<f64> {
        let mut best = f64::INFINITY;
        self.trials
            .iter()
            .map(|t| {
                best = best.min(t.value);
                best
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial(evaluation: usize, sequence: &str, value: f64) -> Trial {
        Trial {
            evaluation,
            sequence: sequence.to_string(),
            bits: None,
            value,
            source: TrialSource::Random,
            repaired_blocks: 0,
            duplicate: false,
        }
    }

    #[test]
    fn best_trial_breaks_ties_toward_the_earliest() {
        let model = EnergyModel::default_model();
        let target: SecondaryStructure = ".....".parse().unwrap();
        let trials = vec![
            trial(0, "AAAAA", 0.5),
            trial(1, "AAAAC", 0.25),
            trial(2, "AAAAG", 0.25),
        ];
        let record = RunRecord::from_trials(
            Method::RandomSearch,
            &target,
            0,
            &RunConfig::default(),
            trials,
            &model,
            WallStats::default(),
        )
        .unwrap();
        assert_eq!(record.best_evaluation, 1);
        assert_eq!(record.best_sequence, "AAAAC");
        assert_eq!(record.best_so_far(), vec![0.5, 0.25, 0.25]);
    }

    #[test]
    fn success_reflects_folding_the_best_sequence() {
        let model = EnergyModel::default_model();
        let open: SecondaryStructure = ".....".parse().unwrap();
        let record = RunRecord::from_trials(
            Method::RandomSearch,
            &open,
            0,
            &RunConfig::default(),
            vec![trial(0, "AAAAA", 0.1)],
            &model,
            WallStats::default(),
        )
        .unwrap();
        // AAAAA cannot pair at all, so its MFE structure is the open chain.
        assert!(record.success);

        let hairpin: SecondaryStructure = "((((....))))".parse().unwrap();
        let record = RunRecord::from_trials(
            Method::RandomSearch,
            &hairpin,
            0,
            &RunConfig::default(),
            vec![trial(0, "AAAAAAAAAAAA", 0.9)],
            &model,
            WallStats::default(),
        )
        .unwrap();
        assert!(!record.success);
    }

    #[test]
    fn wall_stats_never_reach_the_serialized_form() {
        let model = EnergyModel::default_model();
        let target: SecondaryStructure = ".....".parse().unwrap();
        let mut record = RunRecord::from_trials(
            Method::Fmqa,
            &target,
            3,
            &RunConfig::default(),
            vec![trial(0, "AAAAA", 0.1)],
            &model,
            WallStats { total_seconds: 1.0, ..WallStats::default() },
        )
        .unwrap();
        let a = serde_json::to_string(&record).unwrap();
        record.wall.total_seconds = 99.0;
        let b = serde_json::to_string(&record).unwrap();
        assert_eq!(a, b);
        assert!(!a.contains("seconds"));
        let back: RunRecord = serde_json::from_str(&a).unwrap();
        assert_eq!(back.wall, WallStats::default());
    }
}

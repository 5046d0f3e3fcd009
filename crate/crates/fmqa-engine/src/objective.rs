//! Objectives the drivers minimize.

use rna_thermo::{ensemble_defect, EnergyModel, RnaSequence, SecondaryStructure};

use crate::error::EngineError;

/// A black-box score over sequences; smaller is better. Implementations
/// must be deterministic: the drivers assume re-evaluating a sequence
/// reproduces its value.
pub trait Objective {
    /// Sequence length the objective expects.
    fn length(&self) -> usize;

    fn evaluate(&self, seq: &RnaSequence) -> Result<f64, EngineError>;
}

/// Normalized ensemble defect against a fixed target structure.
pub struct NedObjective<'a> {
    target: &'a SecondaryStructure,
    model: &'a EnergyModel,
}

impl<'a> NedObjective<'a> {
    pub fn new(target: &'a SecondaryStructure, model: &'a EnergyModel) -> Self {
        NedObjective { target, model }
    }
}

impl Objective for NedObjective<'_> {
    fn length(&self) -> usize {
        self.target.len()
    }

    fn evaluate(&self, seq: &RnaSequence) -> Result<f64, EngineError> {
        Ok(ensemble_defect(seq, self.target, self.model)?.normalized)
    }
}

/// Fraction of positions differing from a planted sequence. A synthetic
/// objective with a known unique optimum, used to exercise the drivers
/// without thermodynamics.
pub struct HammingObjective {
    target: RnaSequence,
}

impl HammingObjective {
    pub fn new(target: RnaSequence) -> Self {
        HammingObjective { target }
    }
}

impl Objective for HammingObjective {
    fn length(&self) -> usize {
        self.target.len()
    }

    fn evaluate(&self, seq: &RnaSequence) -> Result<f64, EngineError> {
        let mismatches = self
            .target
            .bases()
            .iter()
            .zip(seq.bases())
            .filter(|(a, b)| a != b)
            .count();
        Ok(mismatches as f64 / self.target.len() as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_counts_mismatch_fraction() {
        let objective = HammingObjective::new("AUGC".parse().unwrap());
        assert_eq!(objective.length(), 4);
        let same: RnaSequence = "AUGC".parse().unwrap();
        let off1: RnaSequence = "AUGG".parse().unwrap();
        let all: RnaSequence = "GCAU".parse().unwrap();
        assert_eq!(objective.evaluate(&same).unwrap(), 0.0);
        assert_eq!(objective.evaluate(&off1).unwrap(), 0.25);
        assert_eq!(objective.evaluate(&all).unwrap(), 1.0);
    }

    #[test]
    fn ned_objective_scores_against_the_target() {
        let model = EnergyModel::default_model();
        let target: SecondaryStructure = "((((....))))".parse().unwrap();
        let objective = NedObjective::new(&target, &model);
        let good: RnaSequence = "GGGGAAAACCCC".parse().unwrap();
        let bad: RnaSequence = "AAAAAAAAAAAA".parse().unwrap();
        let g = objective.evaluate(&good).unwrap();
        let b = objective.evaluate(&bad).unwrap();
        assert!(g < 0.2 && b > 0.6, "good {g}, bad {b}");
    }
}

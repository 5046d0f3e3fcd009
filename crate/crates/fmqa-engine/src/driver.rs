//! Shared driver plumbing: sampling, evaluation logging, duplicate
//! tracking, and budget accounting.
//!
//! All methods draw their starting sequences from the same labeled stream,
//! so runs with equal seeds and sample counts start from bitwise-identical
//! populations and differences in outcomes come from the search strategy
//! alone.

use std::collections::HashMap;
use std::time::Instant;

use encodings::BitVector;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rna_thermo::{Base, RnaSequence};

use crate::error::EngineError;
use crate::objective::Objective;
use crate::record::{Trial, TrialSource};
use crate::seeds::mix_label;

/// Uniform random sequence of the given length.
pub(crate) fn random_sequence(rng: &mut ChaCha8Rng, length: usize) -> RnaSequence {
    let bases = (0..length).map(|_| Base::ALL[rng.random_range(0..4)]).collect();
    RnaSequence::new(bases).expect("sampled sequences are non-empty")
}

/// Replaces one uniformly chosen position with a uniformly chosen different
/// base.
pub(crate) fn mutate_one_position(rng: &mut ChaCha8Rng, seq: &RnaSequence) -> RnaSequence {
    let position = rng.random_range(0..seq.len());
    let mut bases = seq.bases().to_vec();
    let shifted = (bases[position].index() + 1 + rng.random_range(0..3)) % 4;
    bases[position] = Base::ALL[shifted];
    RnaSequence::new(bases).expect("length unchanged")
}

/// The shared initialization sample: method-independent for a given seed,
/// so every driver starts from the same sequences.
pub(crate) fn draw_init_sequences(seed: u64, length: usize, count: usize) -> Vec<RnaSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(mix_label(seed, "init"));
    (0..count).map(|_| random_sequence(&mut rng, length)).collect()
}

/// Budgeted objective evaluator that logs every call as a trial.
///
/// Values are cached by sequence: re-evaluating a duplicate costs budget
/// but not wall time, and the objective's determinism guarantees the cache
/// is transparent.
pub(crate) struct Evaluator<'a, O: Objective> {
    objective: &'a O,
    limit: usize,
    cache: HashMap<String, f64>,
    pub trials: Vec<Trial>,
    pub evaluate_seconds: f64,
}

impl<'a, O: Objective> Evaluator<'a, O> {
    pub fn new(objective: &'a O, limit: usize) -> Self {
        Evaluator {
            objective,
            limit,
            cache: HashMap::new(),
            trials: Vec::with_capacity(limit),
            evaluate_seconds: 0.0,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        self.trials.len() >= self.limit
    }

    /// Whether the sequence has been evaluated before.
    pub fn seen(&self, seq: &RnaSequence) -> bool {
        self.cache.contains_key(&seq.to_string())
    }

    /// Evaluates `seq`, consuming one unit of budget and appending a trial.
    pub fn record(
        &mut self,
        seq: &RnaSequence,
        bits: Option<BitVector>,
        source: TrialSource,
        repaired_blocks: usize,
        duplicate: bool,
    ) -> Result<f64, EngineError> {
        assert!(!self.is_exhausted(), "evaluation past the budget");
        let key = seq.to_string();
        let value = match self.cache.get(&key) {
            Some(&v) => v,
            None => {
                let start = Instant::now();
                let v = self.objective.evaluate(seq)?;
                self.evaluate_seconds += start.elapsed().as_secs_f64();
                self.cache.insert(key.clone(), v);
                v
            }
        };
        self.trials.push(Trial {
            evaluation: self.trials.len(),
            sequence: key,
            bits,
            value,
            source,
            repaired_blocks,
            duplicate,
        });
        Ok(value)
    }
}

//! The surrogate-assisted optimization loop.
//!
//! Each iteration spends exactly one objective evaluation:
//!
//! 1. fit a fresh factorization surrogate to every trial so far,
//! 2. rewrite it as a quadratic binary problem, add the encoding's
//!    feasibility penalty, and rescale coefficients to unit magnitude,
//! 3. anneal for a minimizer and decode it to a sequence,
//! 4. if that sequence was already evaluated, re-randomize one position so
//!    the budget is never spent re-measuring a known value,
//! 5. evaluate, append the trial, and continue.
//!
//! The surrogate trains on the solver's raw bit vectors; only when the
//! duplicate escape changes the sequence is the trial stored with the
//! canonical re-encoding, so inputs and recorded values always agree.

use std::time::Instant;

use qubo_annealer::sa_solve;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rna_thermo::{EnergyModel, SecondaryStructure};
use surrogate_fm::{
    add_penalty, fm_to_qubo, fm_train, normalize_qubo, Dataset, SurrogateError,
};

use crate::config::{Method, RunConfig};
use crate::driver::{draw_init_sequences, mutate_one_position, Evaluator};
use crate::error::EngineError;
use crate::objective::{NedObjective, Objective};
use crate::record::{RunRecord, Trial, TrialSource, WallStats};
use crate::seeds::{mix_counter, mix_label};

/// Runs the surrogate loop on an arbitrary objective and returns the trial
/// log with timing totals.
pub fn fmqa_optimize<O: Objective>(
    objective: &O,
    config: &RunConfig,
    seed: u64,
) -> Result<(Vec<Trial>, WallStats), EngineError> {
    config.validate()?;
    let run_start = Instant::now();
    let length = objective.length();
    let num_bits = config.scheme.num_bits(length);
    let penalty = encodings::penalty_qubo(config.scheme, length, config.penalty_mu)?;

    let mut evaluator = Evaluator::new(objective, config.total_evaluations());
    let mut dataset = Dataset::new(num_bits);
    for seq in draw_init_sequences(seed, length, config.init_samples) {
        let bits = encodings::sequence_to_bits(&seq, config.scheme, &config.assignment);
        let value = evaluator.record(&seq, Some(bits.clone()), TrialSource::Init, 0, false)?;
        dataset.push(bits, value)?;
    }

    let train_seed = mix_label(seed, "train");
    let solve_seed = mix_label(seed, "solve");
    let mut escape_rng = ChaCha8Rng::seed_from_u64(mix_label(seed, "duplicate-escape"));
    let mut train_seconds = 0.0;
    let mut solve_seconds = 0.0;

    for iteration in 0..config.budget {
        let start = Instant::now();
        let model = fm_train(&dataset, &config.train, mix_counter(train_seed, iteration as u64))?;
        train_seconds += start.elapsed().as_secs_f64();

        let mut qubo = fm_to_qubo(&model);
        add_penalty(&mut qubo, &penalty)?;
        match normalize_qubo(&mut qubo) {
            Ok(_) => {}
            // A constant surrogate has nothing to scale; anneal it as-is.
            Err(SurrogateError::AllZeroCoefficients) => {}
            Err(other) => return Err(other.into()),
        }

        let start = Instant::now();
        let solved = sa_solve(&qubo, &config.anneal, mix_counter(solve_seed, iteration as u64))?;
        solve_seconds += start.elapsed().as_secs_f64();

        let decoded =
            encodings::bits_to_sequence(&solved.bits, config.scheme, &config.assignment)?;
        let (sequence, bits, duplicate) = if evaluator.seen(&decoded.sequence) {
            let mutated = mutate_one_position(&mut escape_rng, &decoded.sequence);
            let canonical =
                encodings::sequence_to_bits(&mutated, config.scheme, &config.assignment);
            (mutated, canonical, true)
        } else {
            (decoded.sequence.clone(), solved.bits.clone(), false)
        };
        let value = evaluator.record(
            &sequence,
            Some(bits.clone()),
            TrialSource::Surrogate,
            decoded.repaired_blocks,
            duplicate,
        )?;
        dataset.push(bits, value)?;
    }

    let wall = WallStats {
        total_seconds: run_start.elapsed().as_secs_f64(),
        evaluate_seconds: evaluator.evaluate_seconds,
        train_seconds,
        solve_seconds,
    };
    Ok((evaluator.trials, wall))
}

/// Designs a sequence for `target` by minimizing normalized ensemble defect
/// with the surrogate loop.
pub fn run_fmqa(
    target: &SecondaryStructure,
    model: &EnergyModel,
    config: &RunConfig,
    seed: u64,
) -> Result<RunRecord, EngineError> {
    let objective = NedObjective::new(target, model);
    let (trials, wall) = fmqa_optimize(&objective, config, seed)?;
    RunRecord::from_trials(Method::Fmqa, target, seed, config, trials, model, wall)
}

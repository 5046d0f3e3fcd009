//! Baseline searches run under the same budget accounting as the surrogate
//! loop: uniform random search and a generational genetic algorithm.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rna_thermo::{Base, EnergyModel, RnaSequence, SecondaryStructure};

use crate::config::{Method, RunConfig};
use crate::driver::{draw_init_sequences, random_sequence, Evaluator};
use crate::error::EngineError;
use crate::objective::{NedObjective, Objective};
use crate::record::{RunRecord, Trial, TrialSource, WallStats};
use crate::seeds::mix_label;

/// Uniform random search: the initialization distribution continued for the
/// whole budget.
pub fn random_search_optimize<O: Objective>(
    objective: &O,
    config: &RunConfig,
    seed: u64,
) -> Result<(Vec<Trial>, WallStats), EngineError> {
    config.validate()?;
    let run_start = Instant::now();
    let length = objective.length();
    let mut evaluator = Evaluator::new(objective, config.total_evaluations());
    for seq in draw_init_sequences(seed, length, config.init_samples) {
        evaluator.record(&seq, None, TrialSource::Init, 0, false)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(mix_label(seed, "random-search"));
    while !evaluator.is_exhausted() {
        let seq = random_sequence(&mut rng, length);
        let duplicate = evaluator.seen(&seq);
        evaluator.record(&seq, None, TrialSource::Random, 0, duplicate)?;
    }
    let wall = WallStats {
        total_seconds: run_start.elapsed().as_secs_f64(),
        evaluate_seconds: evaluator.evaluate_seconds,
        train_seconds: 0.0,
        solve_seconds: 0.0,
    };
    Ok((evaluator.trials, wall))
}

/// Generational genetic algorithm over sequences: binary tournaments,
/// uniform crossover, per-position reset mutation, and elitism. The final
/// generation is truncated mid-stream when the budget runs out.
pub fn ga_optimize<O: Objective>(
    objective: &O,
    config: &RunConfig,
    seed: u64,
) -> Result<(Vec<Trial>, WallStats), EngineError> {
    config.validate()?;
    let run_start = Instant::now();
    let length = objective.length();
    let ga = &config.ga;
    let mut evaluator = Evaluator::new(objective, config.total_evaluations());

    // The initial population comes from the same stream as every other
    // method's initialization.
    let mut population: Vec<(RnaSequence, f64)> = Vec::with_capacity(ga.population);
    for seq in draw_init_sequences(seed, length, ga.population) {
        if evaluator.is_exhausted() {
            break;
        }
        let value = evaluator.record(&seq, None, TrialSource::Init, 0, false)?;
        population.push((seq, value));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(mix_label(seed, "ga"));
    let mutation_prob = (ga.mutation_scale / length as f64).min(1.0);

    while !evaluator.is_exhausted() {
        // Elites survive unevaluated; ties prefer earlier individuals.
        let mut order: Vec<usize> = (0..population.len()).collect();
        order.sort_by(|&a, &b| {
            population[a].1.partial_cmp(&population[b].1).expect("finite objective values")
        });
        let mut next: Vec<(RnaSequence, f64)> =
            order.iter().take(ga.elitism).map(|&i| population[i].clone()).collect();

        while next.len() < ga.population && !evaluator.is_exhausted() {
            let first = tournament(&mut rng, &population);
            let second = tournament(&mut rng, &population);
            let mut child = if rng.random::<f64>() < ga.crossover_prob {
                uniform_crossover(&mut rng, first, second)
            } else {
                first.bases().to_vec()
            };
            reset_mutation(&mut rng, &mut child, mutation_prob);
            let child = RnaSequence::new(child).expect("children keep the target length");
            let duplicate = evaluator.seen(&child);
            let value = evaluator.record(&child, None, TrialSource::Evolution, 0, duplicate)?;
            next.push((child, value));
        }
        population = next;
    }

    let wall = WallStats {
        total_seconds: run_start.elapsed().as_secs_f64(),
        evaluate_seconds: evaluator.evaluate_seconds,
        train_seconds: 0.0,
        solve_seconds: 0.0,
    };
    Ok((evaluator.trials, wall))
}

/// Binary tournament with replacement: draw two, keep the better, ties to
/// the first drawn.
fn tournament<'a>(
    rng: &mut ChaCha8Rng,
    population: &'a [(RnaSequence, f64)],
) -> &'a RnaSequence {
    let a = rng.random_range(0..population.len());
    let b = rng.random_range(0..population.len());
    if population[b].1 < population[a].1 {
        &population[b].0
    } else {
        &population[a].0
    }
}

/// Each position comes from either parent with probability one half.
fn uniform_crossover(
    rng: &mut ChaCha8Rng,
    first: &RnaSequence,
    second: &RnaSequence,
) -> Vec<Base> {
    first
        .bases()
        .iter()
        .zip(second.bases())
        .map(|(&a, &b)| if rng.random::<bool>() { a } else { b })
        .collect()
}

/// Independently resets each position to one of the three other bases with
/// probability `prob`.
fn reset_mutation(rng: &mut ChaCha8Rng, bases: &mut [Base], prob: f64) {
    for base in bases.iter_mut() {
        if rng.random::<f64>() < prob {
            let shifted = (base.index() + 1 + rng.random_range(0..3)) % 4;
            *base = Base::ALL[shifted];
        }
    }
}

/// Random-search baseline on the ensemble-defect objective.
pub fn run_random_search(
    target: &SecondaryStructure,
    model: &EnergyModel,
    config: &RunConfig,
    seed: u64,
) -> Result<RunRecord, EngineError> {
    let objective = NedObjective::new(target, model);
    let (trials, wall) = random_search_optimize(&objective, config, seed)?;
    RunRecord::from_trials(Method::RandomSearch, target, seed, config, trials, model, wall)
}

/// Genetic-algorithm baseline on the ensemble-defect objective.
pub fn run_ga(
    target: &SecondaryStructure,
    model: &EnergyModel,
    config: &RunConfig,
    seed: u64,
) -> Result<RunRecord, EngineError> {
    let objective = NedObjective::new(target, model);
    let (trials, wall) = ga_optimize(&objective, config, seed)?;
    RunRecord::from_trials(Method::Ga, target, seed, config, trials, model, wall)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn tournament_prefers_the_better_individual() {
        let population = vec![
            ("AAAA".parse().unwrap(), 0.9),
            ("UUUU".parse().unwrap(), 0.1),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut wins = 0;
        for _ in 0..200 {
            if tournament(&mut rng, &population).to_string() == "UUUU" {
                wins += 1;
            }
        }
        // The better individual wins unless both draws pick the worse one:
        // probability 3/4. Three sigma of Binomial(200, 3/4) is about 18.
        assert!((wins as i64 - 150).abs() < 19, "better individual won {wins}/200");
    }

    #[test]
    fn crossover_mixes_only_parent_material() {
        let first: RnaSequence = "AAAAAAAA".parse().unwrap();
        let second: RnaSequence = "UUUUUUUU".parse().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut from_first = 0;
        let mut total = 0;
        for _ in 0..300 {
            for b in uniform_crossover(&mut rng, &first, &second) {
                assert!(b == Base::A || b == Base::U);
                from_first += usize::from(b == Base::A);
                total += 1;
            }
        }
        // Three sigma of Binomial(2400, 1/2) is about 73.
        let expected = total / 2;
        assert!(
            (from_first as i64 - expected as i64).abs() < 74,
            "{from_first}/{total} positions from the first parent"
        );
    }

    #[test]
    fn reset_mutation_hits_the_expected_rate_and_always_changes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let length = 20;
        let prob = 5.0 / length as f64;
        let original: RnaSequence = "AUGCAUGCAUGCAUGCAUGC".parse().unwrap();
        let rounds = 2000;
        let mut changed = 0;
        for _ in 0..rounds {
            let mut bases = original.bases().to_vec();
            reset_mutation(&mut rng, &mut bases, prob);
            for (i, &b) in bases.iter().enumerate() {
                if b != original.base(i) {
                    changed += 1;
                }
            }
        }
        // Every reset picks a different base, so changes follow
        // Binomial(rounds * length, prob): mean 10000, sd about 87.
        let n = (rounds * length) as f64;
        let mean = n * prob;
        let sd = (n * prob * (1.0 - prob)).sqrt();
        assert!(
            (changed as f64 - mean).abs() < 3.0 * sd,
            "changed {changed}, expected {mean:.0} +- {:.0}",
            3.0 * sd
        );
    }
}

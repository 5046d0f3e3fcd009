//! End-to-end behavior of the three drivers: budget accounting, shared
//! initialization, duplicate escapes, determinism, and recovery of a
//! planted optimum.

use encodings::EncodingScheme;
use fmqa_engine::{
    fmqa_optimize, ga_optimize, random_search_optimize, run_fmqa, run_ga, run_random_search,
    HammingObjective, RunConfig, TrialSource,
};
use qubo_annealer::AnnealSchedule;
use rna_thermo::{mfe_structure, EnergyModel, RnaSequence, SecondaryStructure};
use surrogate_fm::TrainConfig;

/// Small configuration that keeps surrogate fits and anneals quick.
fn quick_config(scheme: EncodingScheme, budget: usize) -> RunConfig {
    RunConfig {
        scheme,
        budget,
        init_samples: 10,
        train: TrainConfig { epochs: 300, num_factors: 8, ..TrainConfig::default() },
        anneal: AnnealSchedule { sweeps: 400, restarts: 4, ..AnnealSchedule::default() },
        ..RunConfig::default()
    }
}

#[test]
fn surrogate_loop_recovers_a_planted_optimum() {
    // The mismatch count is linear in one-hot bits, so the surrogate can
    // represent it exactly; the loop should locate the planted sequence
    // well within the budget for almost every seed.
    let target: RnaSequence = "GAUCCGUA".parse().unwrap();
    let objective = HammingObjective::new(target);
    let mut config = quick_config(EncodingScheme::OneHot, 140);
    config.train.epochs = 500;
    config.anneal.sweeps = 800;
    let mut solved = 0;
    for seed in 0..10 {
        let (trials, _) = fmqa_optimize(&objective, &config, seed).unwrap();
        assert_eq!(trials.len(), 150);
        if trials.iter().any(|t| t.value == 0.0) {
            solved += 1;
        }
    }
    assert!(solved >= 8, "planted optimum found in {solved}/10 runs");
}

#[test]
fn all_methods_share_the_initialization_sample() {
    let model = EnergyModel::default_model();
    let target: SecondaryStructure = "((((....))))".parse().unwrap();
    let mut config = quick_config(EncodingScheme::DomainWall, 3);
    config.train.epochs = 50;
    config.anneal.sweeps = 50;
    let seed = 4;
    let fmqa = run_fmqa(&target, &model, &config, seed).unwrap();
    let random = run_random_search(&target, &model, &config, seed).unwrap();
    let ga = run_ga(&target, &model, &config, seed).unwrap();

    for record in [&fmqa, &random, &ga] {
        assert_eq!(record.trials.len(), config.total_evaluations());
        assert!(record.trials[..config.init_samples]
            .iter()
            .all(|t| t.source == TrialSource::Init));
    }
    for i in 0..config.init_samples {
        assert_eq!(fmqa.trials[i].sequence, random.trials[i].sequence);
        assert_eq!(fmqa.trials[i].sequence, ga.trials[i].sequence);
        assert_eq!(fmqa.trials[i].value, random.trials[i].value);
        assert_eq!(fmqa.trials[i].value, ga.trials[i].value);
    }
    // After initialization the methods diverge by source.
    assert!(fmqa.trials[config.init_samples..]
        .iter()
        .all(|t| t.source == TrialSource::Surrogate));
    assert!(random.trials[config.init_samples..]
        .iter()
        .all(|t| t.source == TrialSource::Random));
    assert!(ga.trials[config.init_samples..]
        .iter()
        .all(|t| t.source == TrialSource::Evolution));
}

#[test]
fn repeated_runs_serialize_byte_identically() {
    let model = EnergyModel::default_model();
    let target: SecondaryStructure = "((((....))))".parse().unwrap();
    let mut config = quick_config(EncodingScheme::Binary, 5);
    config.train.epochs = 100;
    config.anneal.sweeps = 100;
    let a = run_fmqa(&target, &model, &config, 11).unwrap();
    let b = run_fmqa(&target, &model, &config, 11).unwrap();
    assert_eq!(a, b);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    let c = run_fmqa(&target, &model, &config, 12).unwrap();
    assert_ne!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&c).unwrap(),
        "different seeds explore differently"
    );
}

#[test]
fn duplicate_proposals_are_escaped_and_still_charged() {
    // Two positions admit only 16 sequences, so a 30-iteration run must
    // propose duplicates; every one is re-randomized, logged, and charged.
    let target: RnaSequence = "GA".parse().unwrap();
    let objective = HammingObjective::new(target);
    let config = quick_config(EncodingScheme::OneHot, 30);
    let (trials, _) = fmqa_optimize(&objective, &config, 5).unwrap();
    assert_eq!(trials.len(), 40, "duplicates never refund budget");
    let duplicates = trials.iter().filter(|t| t.duplicate).count();
    assert!(duplicates >= 14, "at most 16 distinct proposals exist, got {duplicates}");
    for trial in trials.iter().filter(|t| t.duplicate) {
        // Escaped trials store the canonical encoding of what was evaluated.
        let bits = trial.bits.as_ref().unwrap();
        let decoded = encodings::bits_to_sequence(
            bits,
            config.scheme,
            &config.assignment,
        )
        .unwrap();
        assert_eq!(decoded.sequence.to_string(), trial.sequence);
        assert_eq!(decoded.repaired_blocks, 0);
    }
}

#[test]
fn ga_respects_population_mechanics_under_truncation() {
    let model = EnergyModel::default_model();
    let target: SecondaryStructure = "((((....))))".parse().unwrap();
    let mut config = quick_config(EncodingScheme::OneHot, 13);
    config.ga.population = 6;
    // Every method consumes init_samples + budget = 23 evaluations. The
    // population takes 6, generations of 5 children follow, and the last
    // generation truncates after 2.
    let record = run_ga(&target, &model, &config, 2).unwrap();
    assert_eq!(record.trials.len(), 23);
    assert_eq!(
        record.trials.iter().filter(|t| t.source == TrialSource::Init).count(),
        6
    );
    assert_eq!(
        record.trials.iter().filter(|t| t.source == TrialSource::Evolution).count(),
        17
    );
}

#[test]
fn success_field_matches_folding_the_best_sequence() {
    let model = EnergyModel::default_model();
    let target: SecondaryStructure = ".....".parse().unwrap();
    let mut config = quick_config(EncodingScheme::DomainWall, 2);
    config.train.epochs = 50;
    config.anneal.sweeps = 50;
    let record = run_fmqa(&target, &model, &config, 8).unwrap();
    let best: RnaSequence = record.best_sequence.parse().unwrap();
    let (folded, _) = mfe_structure(&best, &model);
    assert_eq!(record.success, folded == target);
    assert_eq!(
        record.best_value,
        record.trials.iter().map(|t| t.value).fold(f64::INFINITY, f64::min)
    );
}

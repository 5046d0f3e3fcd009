//! Simulated annealing over quadratic binary models.
//!
//! * Metropolis single-flip proposals, visiting variables in index order
//!   within each sweep.
//! * Inverse temperature rises geometrically from `beta_start` to
//!   `beta_end` across sweeps.
//! * Independent restarts from fresh random states; each restart runs on
//!   its own counter-derived random stream, so results depend only on
//!   `(seed, restart)` and never on thread timing.
//! * The best state ever visited wins; ties across restarts go to the
//!   earlier restart. The returned energy is recomputed from the problem,
//!   not the incrementally tracked value.

use encodings::BitVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use surrogate_fm::QuboProblem;

use crate::error::AnnealError;
use crate::fields::LocalFields;

/// Annealing schedule and restart budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AnnealSchedule {
    pub sweeps: usize,
    pub restarts: usize,
    pub beta_start: f64,
    pub beta_end: f64,
}

impl Default for AnnealSchedule {
    fn default() -> Self {
        AnnealSchedule { sweeps: 2000, restarts: 8, beta_start: 0.1, beta_end: 50.0 }
    }
}

impl AnnealSchedule {
    pub fn validate(&self) -> Result<(), AnnealError> {
        if self.sweeps < 1 {
            return Err(AnnealError::InvalidSchedule { name: "sweeps", value: self.sweeps as f64 });
        }
        if self.restarts < 1 {
            return Err(AnnealError::InvalidSchedule {
                name: "restarts",
                value: self.restarts as f64,
            });
        }
        if !(self.beta_start > 0.0 && self.beta_start.is_finite()) {
            return Err(AnnealError::InvalidSchedule {
                name: "beta_start",
                value: self.beta_start,
            });
        }
        if !(self.beta_end >= self.beta_start && self.beta_end.is_finite()) {
            return Err(AnnealError::InvalidSchedule { name: "beta_end", value: self.beta_end });
        }
        Ok(())
    }

    /// Inverse temperature of sweep `t` in 0..sweeps. Geometric in `t`, so
    /// the first sweep runs at `beta_start` and the last at `beta_end`; a
    /// single-sweep schedule stays at `beta_start`.
    pub fn beta_at(&self, t: usize) -> f64 {
        debug_assert!(t < self.sweeps);
        if self.sweeps == 1 {
            return self.beta_start;
        }
        let frac = t as f64 / (self.sweeps - 1) as f64;
        self.beta_start * (self.beta_end / self.beta_start).powf(frac)
    }
}

/// Best assignment found by an anneal.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub bits: BitVector,
    /// Energy of `bits`, recomputed from the problem.
    pub energy: f64,
    /// Best recomputed energy of each restart, in restart order.
    pub restart_energies: Vec<f64>,
}

/// Anneals `problem` and returns the best state seen across all restarts.
pub fn sa_solve(
    problem: &QuboProblem,
    schedule: &AnnealSchedule,
    seed: u64,
) -> Result<SolveResult, AnnealError> {
    schedule.validate()?;
    let n = problem.num_vars();
    let mut best_bits: Option<Vec<u8>> = None;
    let mut best_energy = f64::INFINITY;
    let mut restart_energies = Vec::with_capacity(schedule.restarts);

    for restart in 0..schedule.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(restart as u64);
        let init: Vec<u8> = (0..n).map(|_| u8::from(rng.random::<bool>())).collect();
        let mut fields = LocalFields::new(problem, init);

        let mut local_best = fields.bits().to_vec();
        let mut local_best_energy = fields.energy();
        for t in 0..schedule.sweeps {
            let beta = schedule.beta_at(t);
            for i in 0..n {
                let delta = fields.delta(i);
                let accept = delta <= 0.0 || rng.random::<f64>() < (-beta * delta).exp();
                if accept {
                    fields.flip(i);
                    if fields.energy() < local_best_energy {
                        local_best_energy = fields.energy();
                        local_best.copy_from_slice(fields.bits());
                    }
                }
            }
        }

        let exact = problem.evaluate(&local_best);
        debug_assert!(
            (exact - local_best_energy).abs() <= 1e-6 * (1.0 + exact.abs()),
            "tracked energy {local_best_energy} drifted from exact {exact}"
        );
        restart_energies.push(exact);
        if exact < best_energy {
            best_energy = exact;
            best_bits = Some(local_best);
        }
    }

    let bits = best_bits.expect("at least one restart ran");
    Ok(SolveResult { bits: BitVector::from_bits(bits), energy: best_energy, restart_energies })
}

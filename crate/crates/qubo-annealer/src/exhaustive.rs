//! Exact minimization of small quadratic models.
//!
//! Walks all 2^n assignments in Gray-code order, so consecutive states
//! differ by one flip and each step costs O(n) through the incremental
//! fields. Ties on the minimum go to the lexicographically smallest bit
//! vector (variable 0 weighs heaviest), which pins down a unique answer on
//! degenerate landscapes.

use encodings::BitVector;
use surrogate_fm::QuboProblem;

use crate::error::AnnealError;
use crate::fields::LocalFields;

/// Largest variable count `exhaustive_solve` accepts.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Finds the global minimum by enumerating every assignment.
pub fn exhaustive_solve(problem: &QuboProblem) -> Result<(BitVector, f64), AnnealError> {
    let n = problem.num_vars();
    if n > EXHAUSTIVE_LIMIT {
        return Err(AnnealError::ProblemTooLarge { num_vars: n, limit: EXHAUSTIVE_LIMIT });
    }
    let mut fields = LocalFields::new(problem, vec![0; n]);
    let mut best_bits = fields.bits().to_vec();
    // The stored best is always an exactly recomputed energy, so ties can be
    // compared with plain equality.
    let mut best_energy = problem.evaluate(&best_bits);

    for step in 1u64..(1u64 << n) {
        // Binary-reflected Gray code: state s differs from s - 1 in the
        // lowest set bit of s.
        let i = step.trailing_zeros() as usize;
        fields.flip(i);
        // The tracked energy can carry tiny float drift; recompute exactly
        // whenever a state comes close enough to contend.
        let tolerance = 1e-9 * (1.0 + best_energy.abs());
        if fields.energy() <= best_energy + tolerance {
            let exact = problem.evaluate(fields.bits());
            if exact < best_energy
                || (exact == best_energy && fields.bits() < best_bits.as_slice())
            {
                best_energy = exact;
                best_bits.copy_from_slice(fields.bits());
            }
        }
    }
    Ok((BitVector::from_bits(best_bits), best_energy))
}

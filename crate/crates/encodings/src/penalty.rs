//! Quadratic penalties that keep solver outputs in each scheme's feasible set.
//!
//! * One-hot block (x0..x3): mu * (x0 + x1 + x2 + x3 - 1)^2 expands to a
//!   linear weight of -mu on each bit, +2 mu on each of the six pairs, and a
//!   constant +mu.
//! * Domain-wall block (x0 x1 x2): mu * (x1 (1 - x0) + x2 (1 - x1)) expands
//!   to +mu on x1 and x2 and -mu on the pairs (x0, x1) and (x1, x2).
//! * Binary and unary decode every block, so their penalty is empty.
//!
//! Both expansions are zero exactly on the scheme's feasible blocks and at
//! least mu on every other block, which the tests check exhaustively.

use crate::error::EncodingError;
use crate::scheme::EncodingScheme;

/// Sparse quadratic penalty over the encoding's binary variables.
#[derive(Debug, Clone, PartialEq)]
pub struct PenaltyTerms {
    /// Total number of binary variables the penalty is defined over.
    pub num_vars: usize,
    /// (index, weight) pairs.
    pub linear: Vec<(usize, f64)>,
    /// (i, j, weight) triples with i < j.
    pub quadratic: Vec<(usize, usize, f64)>,
    /// Constant offset.
    pub constant: f64,
}

impl PenaltyTerms {
    /// Penalty value at a full assignment of the binary variables.
    pub fn evaluate(&self, bits: &[u8]) -> f64 {
        assert_eq!(bits.len(), self.num_vars, "penalty evaluated at wrong width");
        let mut total = self.constant;
        for &(i, w) in &self.linear {
            total += w * f64::from(bits[i]);
        }
        for &(i, j, w) in &self.quadratic {
            total += w * f64::from(bits[i]) * f64::from(bits[j]);
        }
        total
    }
}

/// Penalty terms for `num_symbols` consecutive blocks of the given scheme.
pub fn penalty_qubo(
    scheme: EncodingScheme,
    num_symbols: usize,
    mu: f64,
) -> Result<PenaltyTerms, EncodingError> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(EncodingError::NonPositivePenalty { mu });
    }
    let width = scheme.bits_per_symbol();
    let num_vars = width * num_symbols;
    let mut terms = PenaltyTerms { num_vars, linear: Vec::new(), quadratic: Vec::new(), constant: 0.0 };
    for block in 0..num_symbols {
        let base = block * width;
        match scheme {
            EncodingScheme::OneHot => {
                for i in 0..4 {
                    terms.linear.push((base + i, -mu));
                }
                for i in 0..4 {
                    for j in (i + 1)..4 {
                        terms.quadratic.push((base + i, base + j, 2.0 * mu));
                    }
                }
                terms.constant += mu;
            }
            EncodingScheme::DomainWall => {
                terms.linear.push((base + 1, mu));
                terms.linear.push((base + 2, mu));
                terms.quadratic.push((base, base + 1, -mu));
                terms.quadratic.push((base + 1, base + 2, -mu));
            }
            EncodingScheme::Binary | EncodingScheme::Unary => {}
        }
    }
    Ok(terms)
}
